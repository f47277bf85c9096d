#pragma once

namespace nvwire {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSpeedOfLight = 2.99792458e8;       // m/s
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// 1 eV as an angular frequency, e/hbar (rad/s per eV).
inline constexpr double kEvToRadPerSec = 1.602176634e-19 / 1.054571817e-34;

}  // namespace nvwire
