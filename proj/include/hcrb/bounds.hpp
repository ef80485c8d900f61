// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_BOUNDS_HPP
#define HCRB_BOUNDS_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "hcrb/fim_core.hpp"
#include "hcrb/geometry.hpp"

namespace hcrb {

using Matrix7d = Eigen::Matrix<double, 7, 7>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using TransformG = Eigen::Matrix<double, 7, 6>;
using TransformS = Eigen::Matrix<double, 7, 2>;

/// Row order of the state vector eta' = [p, v, b_u].
std::vector<std::string> labels_state();

/// d eta_g^T / d eta' for the exact biased-TOA model. Uses state.phi0 only through
/// the arrival azimuth, whose gradient does not depend on it.
TransformG transform_g(const PlatformState& state, const AnchorState& gnb);
TransformS transform_s(const PlatformState& state, const AnchorState& sat);

struct GnbTerm {
  TransformG T;
  Fim J;
};

struct SatTerm {
  TransformS T;
  Fim J;
};

/// sum T_g J_g T_g^T + sum T_s J_s T_s^T.
Matrix7d assemble_total_fim(const std::vector<GnbTerm>& gnbs, const std::vector<SatTerm>& sats);

/// Schur complement of J over the clock bias.
Matrix6d efim_position_velocity(const Matrix7d& J);

struct AnchorContribution {
  std::string anchor;          // e.g. "g0", "s3"
  double position_info = 0.0;  // trace of the position block of T J T^T (1/m^2)
  double velocity_info = 0.0;  // trace of the velocity block (s^2/m^2)
};

struct BoundReport {
  std::optional<double> peb;  // m
  std::optional<double> veb;  // m/s
  bool feasible = false;      // PEB available
  int rank = 0;
  double condition_number = 0.0;
  bool position_identifiable = false;
  bool velocity_identifiable = false;
  std::vector<AnchorContribution> contributions;
};

/// Options for the rank test on the equilibrated matrix D^-1/2 J D^-1/2.
struct RankPolicy {
  double eigen_threshold = 1e-10;  // relative to the largest eigenvalue
};

/// PEB/VEB from an EFIM that is known to be invertible.
BoundReport peb_veb(const Matrix6d& efim);

/// Full pipeline on a 7x7 state FIM: rank analysis, Schur complement when rank is 7.
/// Otherwise position and velocity are bounded separately, each from the information
/// left once all other coordinates are eliminated with a thresholded pseudo-inverse;
/// a block is identifiable when that reduced matrix has full numerical rank.
BoundReport compute_bounds(const Matrix7d& J, const RankPolicy& policy = {});

}  // namespace hcrb

#endif  // HCRB_BOUNDS_HPP
