// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include "hcrb/scenario.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"

namespace hcrb {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kValidationError, what);
}

bool finite3(const Vec3& x) { return x.allFinite(); }

void validate_array(const ArraySpec& a, const std::string& where) {
  check(a.nx >= 1 && a.ny >= 1, where + ".array: nx and ny must be >= 1");
}

constexpr double kSatRadius = 20.2e6;
constexpr double kSatSpeed = 3900.0;
constexpr double kSatRadialSpeed = 1000.0;
constexpr double kL1 = 1575.42e6;
constexpr double kChipRate = 1.023e6;

struct SatAngles {
  double theta_deg;
  double phi_deg;
};

constexpr std::array<SatAngles, 4> kScenarioA = {{{35.2, 45.0}, {35.2, -135.0}, {57.3, 130.0}, {57.37, -39.8}}};
constexpr std::array<SatAngles, 4> kScenarioB = {{{45.0, 0.08}, {5.0, -0.66}, {17.0, 0.20}, {25.0, -0.14}}};

GnbSpec make_gnb(const Vec3& position, Boresight facing, double center_azimuth,
                 const Vec3& av_position, std::uint64_t pilot_seed) {
  GnbSpec g;
  g.anchor.kind = AnchorKind::kGnb;
  g.anchor.p = position;
  g.anchor.v = Vec3::Zero();
  g.anchor.carrier_freq_hz = 38e9;
  g.array = {12, 12, facing};
  g.pn0_dbhz = 30.0;
  g.ofdm.K = 1024;
  g.ofdm.M = 1000;
  g.ofdm.delta_f = 125e6 / 1024;
  g.ofdm.f_c = g.anchor.carrier_freq_hz;
  g.ofdm.T0 = 8.2e-6;
  g.ofdm.N_b = 16;
  g.ofdm.N_s = 1;
  g.ofdm.ici_halfwidth = 1;
  g.sector.center_azimuth = center_azimuth;
  g.sector.span = deg2rad(120.0);
  // Beams tilt toward the road at the vehicle's polar angle.
  g.sector.polar = los_angles(av_position, position).theta;
  g.pilot_seed = pilot_seed;
  return g;
}

GnssSignalConfig l1_signal() {
  GnssSignalConfig s;
  s.cn0_dbhz = 40.0;
  s.W = kChipRate;
  s.T_c = 1.0 / kChipRate;
  s.N_so = 306900;
  s.T_so = static_cast<double>(s.N_so) * s.T_c;
  s.pulse = PulseShape::kRectangular;
  return s;
}

}  // namespace

void ScenarioSpec::validate() const {
  check(!gnbs.empty() || !satellites.empty(), "scenario needs at least one anchor");
  const PlatformState& av = vehicle.state;
  check(finite3(av.p), "vehicle.position_m must be finite");
  check(finite3(av.v), "vehicle.velocity_mps must be finite");
  check(std::isfinite(av.phi0) && av.phi0 > -kPi && av.phi0 <= kPi,
        "vehicle.phi0_rad must lie in (-pi, pi]");
  check(std::isfinite(av.clock_bias), "vehicle.clock_bias_s must be finite");
  validate_array(vehicle.array, "vehicle");

  for (std::size_t i = 0; i < gnbs.size(); ++i) {
    const GnbSpec& g = gnbs[i];
    const std::string where = "gnbs[" + std::to_string(i) + "]";
    check(finite3(g.anchor.p), where + ".position_m must be finite");
    check(finite3(g.anchor.v), where + ".velocity_mps must be finite");
    check(g.anchor.carrier_freq_hz > 0.0 && std::isfinite(g.anchor.carrier_freq_hz),
          where + ".carrier_freq_hz must be positive");
    check(g.ofdm.f_c == g.anchor.carrier_freq_hz, where + ".ofdm carrier must match carrier_freq_hz");
    check(std::isfinite(g.pn0_dbhz), where + ".pn0_dbhz must be finite");
    validate_array(g.array, where);
    try {
      g.ofdm.validate();
    } catch (const Error& e) {
      check(false, where + ".ofdm: " + e.what());
    }
    check(std::isfinite(g.sector.span) && g.sector.span >= 0.0 &&
              (g.sector.span > 0.0 || g.ofdm.N_b == 1),
          where + ".codebook.span_rad must be positive");
    check(std::isfinite(g.sector.center_azimuth) && std::isfinite(g.sector.polar),
          where + ".codebook angles must be finite");
  }
  for (std::size_t i = 0; i < satellites.size(); ++i) {
    const SatelliteSpec& s = satellites[i];
    const std::string where = "satellites[" + std::to_string(i) + "]";
    check(finite3(s.anchor.p), where + ".position_m must be finite");
    check(finite3(s.anchor.v), where + ".velocity_mps must be finite");
    check(s.anchor.carrier_freq_hz > 0.0 && std::isfinite(s.anchor.carrier_freq_hz),
          where + ".carrier_freq_hz must be positive");
    try {
      s.signal.validate();
    } catch (const Error& e) {
      check(false, where + ".signal: " + e.what());
    }
  }
}

ScenarioSpec builtin_scenario(std::string_view name, const BuiltinOptions& opts) {
  const std::array<SatAngles, 4>* sats = nullptr;
  ScenarioSpec spec;
  if (name == "A" || name == "a") {
    sats = &kScenarioA;
    spec.name = "A";
    spec.description = "Urban road, two gNBs, four well-spaced satellites";
  } else if (name == "B" || name == "b") {
    sats = &kScenarioB;
    spec.name = "B";
    spec.description = "Urban road, two gNBs, four satellites on a narrow azimuth arc";
  } else {
    throw Error(ErrorKind::kUnknownScenario, "no builtin scenario named '" + std::string(name) + "'");
  }

  spec.vehicle.state.p = Vec3(10.0, 0.0, opts.av_height_m);
  spec.vehicle.state.v = Vec3(50.0 / 3.6, 0.0, 0.0);
  spec.vehicle.state.phi0 = 0.0;
  spec.vehicle.state.clock_bias = 0.0;
  spec.vehicle.array = {8, 8, Boresight::kPlusZ};

  const Vec3& av = spec.vehicle.state.p;
  spec.gnbs.push_back(make_gnb(Vec3(0.0, 0.0, 7.0), Boresight::kPlusX, 0.0, av, 1));
  spec.gnbs.push_back(make_gnb(Vec3(20.0, -6.0, 5.0), Boresight::kPlusY, 0.5 * kPi, av, 2));

  std::mt19937_64 rng(opts.velocity_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double tangential = std::sqrt(kSatSpeed * kSatSpeed - kSatRadialSpeed * kSatRadialSpeed);
  for (const SatAngles& a : *sats) {
    SatelliteSpec s;
    s.anchor.kind = AnchorKind::kSatellite;
    s.anchor.p = spherical_to_cartesian({kSatRadius, deg2rad(a.theta_deg), deg2rad(a.phi_deg)});
    s.anchor.carrier_freq_hz = kL1;
    const Vec3 radial = (s.anchor.p - av).normalized() * (opts.radial_away ? 1.0 : -1.0);
    Vec3 t;
    do {
      t = Vec3(normal(rng), normal(rng), normal(rng));
      t -= t.dot(radial) * radial;
    } while (t.norm() < 1e-6);
    s.anchor.v = kSatRadialSpeed * radial + tangential * t.normalized();
    s.signal = l1_signal();
    spec.satellites.push_back(s);
  }
  spec.satellite_velocity_seed = opts.velocity_seed;
  return spec;
}

}  // namespace hcrb
