// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_GEOMETRY_HPP
#define HCRB_GEOMETRY_HPP

#include <Eigen/Core>

#include "hcrb/params.hpp"

namespace hcrb {

using Vec3 = Eigen::Vector3d;

/// Spherical coordinates: rho (m), theta polar angle from +z (rad), phi azimuth from +x (rad).
struct SphericalCoord {
  double rho = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Kinematic state of the vehicle. `phi0` rotates its antenna array about +z;
/// `clock_bias` is the receiver clock offset in seconds.
struct PlatformState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  double phi0 = 0.0;
  double clock_bias = 0.0;
};

enum class AnchorKind { kGnb, kSatellite };

struct AnchorState {
  AnchorKind kind = AnchorKind::kGnb;
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();  // fixed infrastructure unless overridden
  double carrier_freq_hz = 0.0;

  double wavelength() const;
};

struct AnglePair {
  double theta = 0.0;
  double phi = 0.0;
};

/// Wraps to (-pi, pi].
double wrap_angle(double rad) noexcept;

/// Unit vector u(theta, phi) = [cos(phi) sin(theta), sin(phi) sin(theta), cos(theta)].
Vec3 unit_direction(double theta, double phi) noexcept;

Vec3 spherical_to_cartesian(const SphericalCoord& s);
SphericalCoord cartesian_to_spherical(const Vec3& x);

/// Departure angles at anchor `pa` toward `p`.
AnglePair los_angles(const Vec3& p, const Vec3& pa);

/// Arrival angles in the vehicle array frame. The azimuth rotation lives
/// entirely in `vehicle_azimuth()` so an alternative frame convention only
/// has to change that one function.
AnglePair aoa_angles(const Vec3& p, const Vec3& pa, double phi0);
double vehicle_azimuth(double departure_azimuth, double phi0) noexcept;

/// Doppler shift (Hz), positive when the range is closing.
double doppler(const Vec3& p, const Vec3& v, const Vec3& pa, const Vec3& va, double wavelength);

/// Biased time of arrival (1 + f_d/f_c) * b_u + |p - pa| / c.
double biased_toa(const Vec3& p, const Vec3& pa, double clock_bias, double doppler_hz,
                  double carrier_freq_hz);

/// Small-Doppler limit b_u + |p - pa| / c.
double biased_toa_approx(const Vec3& p, const Vec3& pa, double clock_bias);

enum class ToaModel {
  kExact,        // (1 + f_d/f_c) b_u + r/c
  kApproximate,  // b_u + r/c
};

/// Channel parameters a gNB link exposes for the given vehicle state.
ParamVec5G observe_gnb(const PlatformState& state, const AnchorState& gnb,
                       ToaModel toa = ToaModel::kApproximate);

/// Channel parameters of a satellite link.
ParamVecGnss observe_satellite(const PlatformState& state, const AnchorState& sat,
                               ToaModel toa = ToaModel::kApproximate);

}  // namespace hcrb

#endif  // HCRB_GEOMETRY_HPP
