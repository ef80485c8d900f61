// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_ORACLE_HPP
#define HCRB_ORACLE_HPP

// Independent reference computations used to cross-check the fast paths.
// Nothing here is on the production code path.

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hcrb/bounds.hpp"
#include "hcrb/fim_core.hpp"
#include "hcrb/waveform5g.hpp"

namespace hcrb::oracle {

// ---- finite differences ----------------------------------------------------

/// Central-difference Jacobians of the exact observation model.
TransformG fd_transform_g(const PlatformState& state, const AnchorState& gnb);
TransformS fd_transform_s(const PlatformState& state, const AnchorState& sat);

/// max over entries of |a - f| / max(|f|, floor).
double max_entry_error(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& numeric,
                       double floor = 1e-9);

// ---- dense reference matrices ----------------------------------------------

/// I + j 2 pi f_d T_s D^H Q D built from an explicit unitary DFT matrix
/// (Q divided by K for IciScaling::kSymbolFraction).
Eigen::MatrixXcd brute_force_ici(int K, double f_d, double T_s, IciScaling scaling);

/// ((J^-1)_{pv,pv})^-1 via a full 7x7 inverse.
Matrix6d efim_full_inverse(const Matrix7d& J);

/// Rectangular-chip W_eff^2 by adaptive quadrature of f^2 |R(f)|^2 with R the sinc spectrum.
double rect_bandwidth_sq_quadrature(double W, double T_c);
/// Rectangular-chip T_eff^2 by integrating every chip of the window separately.
double rect_time_sq_quadrature(double T_c, long long N_so);

double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& reference);

// ---- random instances ------------------------------------------------------

/// Self-contained small 5G link (owns everything a Link5G refers to).
struct SmallLink {
  OfdmConfig ofdm;
  AntennaArray tx;
  AntennaArray rx;
  BeamformingConfig beams;
  PilotSet pilots;
  Power5GConfig power;
  ParamVec5G eta;

  Link5G link() const { return {ofdm, beams, pilots, tx, rx, power}; }
};

/// Random instance with at most 8 elements per array, K <= 16, M <= 8 and a
/// Doppler large enough to exercise the ICI terms.
SmallLink random_small_link(std::mt19937_64& rng);

struct RandomLinkState {
  PlatformState state;
  AnchorState anchor;
};

RandomLinkState random_gnb_state(std::mt19937_64& rng);
RandomLinkState random_satellite_state(std::mt19937_64& rng);

/// Random symmetric positive-definite 7x7 with mixed unit scales.
Matrix7d random_spd7(std::mt19937_64& rng);

// ---- suites ----------------------------------------------------------------

struct SuiteResult {
  std::string name;
  int cases = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  bool passed() const { return max_deviation <= tolerance; }
};

SuiteResult suite_fim_closed_vs_numeric(int cases, std::uint64_t seed);
SuiteResult suite_jacobians(int cases, std::uint64_t seed);
SuiteResult suite_schur(int cases, std::uint64_t seed);
SuiteResult suite_gnss_quadrature();

std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace hcrb::oracle

#endif  // HCRB_ORACLE_HPP
