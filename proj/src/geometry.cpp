// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include "hcrb/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"

namespace hcrb {

namespace {

// Returns p - pa after rejecting (near-)coincident points.
Vec3 checked_offset(const Vec3& p, const Vec3& pa) {
  Vec3 d = p - pa;
  if (!(d.norm() >= kCoincidentEpsilon)) {
    throw Error(ErrorKind::kCoincidentPoints, "vehicle and anchor are closer than 1e-6 m");
  }
  return d;
}

}  // namespace

double AnchorState::wavelength() const { return kSpeedOfLight / carrier_freq_hz; }

double wrap_angle(double rad) noexcept {
  double w = std::remainder(rad, kTwoPi);  // [-pi, pi]
  if (w <= -kPi) w += kTwoPi;
  return w;
}

Vec3 unit_direction(double theta, double phi) noexcept {
  const double st = std::sin(theta);
  return {std::cos(phi) * st, std::sin(phi) * st, std::cos(theta)};
}

Vec3 spherical_to_cartesian(const SphericalCoord& s) { return s.rho * unit_direction(s.theta, s.phi); }

SphericalCoord cartesian_to_spherical(const Vec3& x) {
  SphericalCoord s;
  s.rho = x.norm();
  s.theta = s.rho > 0.0 ? std::acos(std::clamp(x.z() / s.rho, -1.0, 1.0)) : 0.0;
  s.phi = wrap_angle(std::atan2(x.y(), x.x()));
  return s;
}

AnglePair los_angles(const Vec3& p, const Vec3& pa) {
  const Vec3 d = checked_offset(p, pa);
  const double r = d.norm();
  return {std::acos(std::clamp(d.z() / r, -1.0, 1.0)), wrap_angle(std::atan2(d.y(), d.x()))};
}

double vehicle_azimuth(double departure_azimuth, double phi0) noexcept {
  return wrap_angle(departure_azimuth - phi0 - kPi);
}

AnglePair aoa_angles(const Vec3& p, const Vec3& pa, double phi0) {
  const Vec3 d = checked_offset(p, pa);
  const double r = d.norm();
  return {std::acos(std::clamp(-d.z() / r, -1.0, 1.0)),
          vehicle_azimuth(std::atan2(d.y(), d.x()), phi0)};
}

double doppler(const Vec3& p, const Vec3& v, const Vec3& pa, const Vec3& va, double wavelength) {
  const Vec3 d = checked_offset(p, pa);
  return -(v - va).dot(d) / (wavelength * d.norm());
}

double biased_toa(const Vec3& p, const Vec3& pa, double clock_bias, double doppler_hz,
                  double carrier_freq_hz) {
  const Vec3 d = checked_offset(p, pa);
  return (1.0 + doppler_hz / carrier_freq_hz) * clock_bias + d.norm() / kSpeedOfLight;
}

double biased_toa_approx(const Vec3& p, const Vec3& pa, double clock_bias) {
  return clock_bias + checked_offset(p, pa).norm() / kSpeedOfLight;
}

ParamVec5G observe_gnb(const PlatformState& state, const AnchorState& gnb, ToaModel toa) {
  const AnglePair dod = los_angles(state.p, gnb.p);
  const AnglePair doa = aoa_angles(state.p, gnb.p, state.phi0);
  ParamVec5G eta;
  eta.theta_g = dod.theta;
  eta.phi_g = dod.phi;
  eta.theta_u = doa.theta;
  eta.phi_u = doa.phi;
  eta.f_d = doppler(state.p, state.v, gnb.p, gnb.v, gnb.wavelength());
  eta.tau_b = toa == ToaModel::kExact
                  ? biased_toa(state.p, gnb.p, state.clock_bias, eta.f_d, gnb.carrier_freq_hz)
                  : biased_toa_approx(state.p, gnb.p, state.clock_bias);
  return eta;
}

ParamVecGnss observe_satellite(const PlatformState& state, const AnchorState& sat, ToaModel toa) {
  ParamVecGnss eta;
  eta.f_d = doppler(state.p, state.v, sat.p, sat.v, sat.wavelength());
  eta.tau_b = toa == ToaModel::kExact
                  ? biased_toa(state.p, sat.p, state.clock_bias, eta.f_d, sat.carrier_freq_hz)
                  : biased_toa_approx(state.p, sat.p, state.clock_bias);
  return eta;
}

}  // namespace hcrb
