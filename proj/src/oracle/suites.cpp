// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <chrono>

#include "hcrb/oracle.hpp"

namespace hcrb::oracle {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SuiteResult suite_fim_closed_vs_numeric(int cases, std::uint64_t seed) {
  SuiteResult r{"fim_5g closed form vs finite differences (rel. Frobenius)", cases, 0.0, 1e-5, 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const SmallLink L = random_small_link(rng);
    const Fim closed = fim_5g_closed(L.link(), L.eta, 1);
    const Fim numeric = fim_5g_numeric(L.link(), L.eta);
    r.max_deviation = std::max(r.max_deviation, relative_frobenius(closed.values(), numeric.values()));
  }
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult suite_jacobians(int cases, std::uint64_t seed) {
  SuiteResult r{"transform_g / transform_s vs finite differences (rel. per entry)", cases, 0.0, 1e-6,
                0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const RandomLinkState g = random_gnb_state(rng);
    r.max_deviation = std::max(r.max_deviation, max_entry_error(transform_g(g.state, g.anchor),
                                                                fd_transform_g(g.state, g.anchor)));
    const RandomLinkState s = random_satellite_state(rng);
    r.max_deviation = std::max(r.max_deviation, max_entry_error(transform_s(s.state, s.anchor),
                                                                fd_transform_s(s.state, s.anchor)));
  }
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult suite_schur(int cases, std::uint64_t seed) {
  SuiteResult r{"EFIM Schur complement vs full inverse (rel. Frobenius)", cases, 0.0, 1e-8, 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const Matrix7d J = random_spd7(rng);
    r.max_deviation = std::max(
        r.max_deviation, relative_frobenius(efim_position_velocity(J), efim_full_inverse(J)));
  }
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult suite_gnss_quadrature() {
  SuiteResult r{"rectangular W_eff^2 / T_eff^2 closed forms vs quadrature (rel.)", 2, 0.0, 1e-2, 0.0};
  const auto t0 = Clock::now();
  const GnssSignalConfig cfg;  // L1 C/A defaults
  const double w_closed = effective_bandwidth_sq(cfg);
  const double w_quad = rect_bandwidth_sq_quadrature(cfg.W, cfg.T_c);
  const double t_closed = effective_time_sq(cfg);
  const double t_quad = rect_time_sq_quadrature(cfg.T_c, cfg.N_so);
  r.max_deviation = std::max(std::abs(w_closed - w_quad) / w_quad, std::abs(t_closed - t_quad) / t_quad);
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
  return {suite_fim_closed_vs_numeric(50, seed), suite_jacobians(1000, seed + 1),
          suite_schur(200, seed + 2), suite_gnss_quadrature()};
}

}  // namespace hcrb::oracle
