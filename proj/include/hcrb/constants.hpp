// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_CONSTANTS_HPP
#define HCRB_CONSTANTS_HPP

#include <numbers>

namespace hcrb {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Below this separation (m) two points are treated as coincident.
inline constexpr double kCoincidentEpsilon = 1e-6;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace hcrb

#endif  // HCRB_CONSTANTS_HPP
