// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <Eigen/Dense>
#include <cmath>

#include "hcrb/constants.hpp"
#include "hcrb/oracle.hpp"

namespace hcrb::oracle {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Vec3 uniform_box(std::mt19937_64& rng, double half) {
  return {uniform(rng, -half, half), uniform(rng, -half, half), uniform(rng, -half, half)};
}

Boresight random_boresight(std::mt19937_64& rng) {
  switch (pick(rng, 0, 2)) {
    case 0: return Boresight::kPlusX;
    case 1: return Boresight::kPlusY;
    default: return Boresight::kPlusZ;
  }
}

AntennaArray random_array(std::mt19937_64& rng) {
  // nx * ny <= 8
  static const int shapes[][2] = {{1, 2}, {2, 1}, {2, 2}, {1, 4}, {2, 3}, {2, 4}, {4, 2}, {3, 2}};
  const auto& s = shapes[pick(rng, 0, 7)];
  return build_ura(s[0], s[1], random_boresight(rng));
}

bool well_conditioned(const BeamformingConfig& bf) {
  for (int p = 0; p < bf.period(); ++p) {
    const Eigen::MatrixXcd W = bf.W(p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W.adjoint() * W);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-6 * sv(0))) return false;
  }
  return true;
}

SmallLink draw_small_link(std::mt19937_64& rng);

}  // namespace

SmallLink random_small_link(std::mt19937_64& rng) {
  // Multi-stream draws can pick collinear receive beams; redraw those.
  for (;;) {
    SmallLink L = draw_small_link(rng);
    if (well_conditioned(L.beams)) return L;
  }
}

namespace {

SmallLink draw_small_link(std::mt19937_64& rng) {
  SmallLink L;
  static const int Ks[] = {4, 8, 16};
  L.ofdm.K = Ks[pick(rng, 0, 2)];
  L.ofdm.M = pick(rng, 2, 8);
  L.ofdm.delta_f = uniform(rng, 60e3, 240e3);
  L.ofdm.f_c = uniform(rng, 24e9, 40e9);
  L.ofdm.T0 = L.ofdm.T_s() * uniform(rng, 1.0, 1.1);
  L.tx = random_array(rng);
  L.rx = random_array(rng);
  const int max_streams = static_cast<int>(std::min({L.tx.size(), L.rx.size(), Eigen::Index{3}}));
  L.ofdm.N_b = pick(rng, 1, 4);
  L.ofdm.N_s = pick(rng, 1, std::min(L.ofdm.N_b, max_streams));
  L.ofdm.ici_halfwidth = pick(rng, 0, L.ofdm.K / 2);
  L.ofdm.ici_scaling = pick(rng, 0, 1) == 0 ? IciScaling::kSymbolFraction : IciScaling::kSampleIndex;

  BeamSector sector;
  sector.center_azimuth = uniform(rng, -kPi, kPi);
  sector.span = L.ofdm.N_b == 1 ? 0.0 : uniform(rng, 0.5, 2.5);
  sector.polar = uniform(rng, 0.3, kPi - 0.3);
  const double phi0 = uniform(rng, -kPi, kPi);
  L.beams = build_codebook(L.ofdm, L.tx, L.rx, sector, phi0);
  L.pilots = generate_pilots(L.ofdm, rng());
  L.power = {uniform(rng, 20.0, 60.0), static_cast<int>(L.tx.size()), static_cast<int>(L.rx.size())};

  L.eta.theta_g = uniform(rng, 0.2, kPi - 0.2);
  L.eta.phi_g = uniform(rng, -kPi, kPi);
  L.eta.theta_u = uniform(rng, 0.2, kPi - 0.2);
  L.eta.phi_u = uniform(rng, -kPi, kPi);
  L.eta.tau_b = uniform(rng, 1e-8, 1e-6);
  // |f_d T_s| between 0.5% and 5% of a subcarrier, either sign. Use a smaller
  // ratio with the unscaled kernel so C stays near the identity.
  const double ratio = uniform(rng, 0.005, 0.05) * (pick(rng, 0, 1) ? 1.0 : -1.0);
  const double kernel_scale = L.ofdm.ici_scaling == IciScaling::kSampleIndex ? 1.0 / L.ofdm.K : 1.0;
  L.eta.f_d = ratio * kernel_scale * L.ofdm.delta_f;
  return L;
}

}  // namespace

RandomLinkState random_gnb_state(std::mt19937_64& rng) {
  RandomLinkState r;
  r.anchor.kind = AnchorKind::kGnb;
  r.anchor.p = uniform_box(rng, 50.0);
  r.anchor.v = pick(rng, 0, 3) == 0 ? uniform_box(rng, 5.0) : Vec3::Zero();
  r.anchor.carrier_freq_hz = uniform(rng, 3e9, 60e9);
  do {
    r.state.p = r.anchor.p + uniform_box(rng, 200.0);
    // Keep clear of the anchor's vertical axis, where the azimuth is singular.
  } while (std::hypot(r.state.p.x() - r.anchor.p.x(), r.state.p.y() - r.anchor.p.y()) < 1.0);
  r.state.v = uniform_box(rng, 40.0);
  r.state.phi0 = uniform(rng, -kPi, kPi);
  r.state.clock_bias = uniform(rng, -1e-3, 1e-3);
  return r;
}

RandomLinkState random_satellite_state(std::mt19937_64& rng) {
  RandomLinkState r;
  r.anchor.kind = AnchorKind::kSatellite;
  const double theta = uniform(rng, 0.0, 0.5 * kPi * 0.95);
  const double phi = uniform(rng, -kPi, kPi);
  r.anchor.p = spherical_to_cartesian({uniform(rng, 2.0e7, 2.6e7), theta, phi});
  r.anchor.v = uniform_box(rng, 4000.0);
  r.anchor.carrier_freq_hz = uniform(rng, 1.1e9, 1.7e9);
  r.state.p = uniform_box(rng, 1000.0);
  r.state.v = uniform_box(rng, 40.0);
  r.state.clock_bias = uniform(rng, -1e-3, 1e-3);
  return r;
}

Matrix7d random_spd7(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix7d B;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) B(i, j) = normal(rng);
  }
  Matrix7d A = B * B.transpose() + 0.5 * Matrix7d::Identity();
  // Position, velocity and clock rows live on very different scales in practice.
  Eigen::Matrix<double, 7, 1> s;
  for (int i = 0; i < 7; ++i) s(i) = std::pow(10.0, uniform(rng, -2.0, 2.0));
  return s.asDiagonal() * A * s.asDiagonal();
}

}  // namespace hcrb::oracle
