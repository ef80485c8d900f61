// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_FIM_CORE_HPP
#define HCRB_FIM_CORE_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hcrb/params.hpp"
#include "hcrb/waveform5g.hpp"

namespace hcrb {

/// Real symmetric information matrix with parameter labels.
class Fim {
 public:
  Fim() = default;
  Fim(Eigen::MatrixXd values, std::vector<std::string> labels);

  static Fim zero(std::vector<std::string> labels);

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Eigen::Index size() const { return values_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  /// max |J - J^T| <= tol * max(|J|, tiny).
  bool is_symmetric(double rel_tol = 1e-9) const;
  /// Smallest eigenvalue >= -tol * trace.
  bool is_psd(double rel_tol = 1e-9) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> labels_;
};

std::vector<std::string> labels_5g();
std::vector<std::string> labels_gnss();

/// Entry-wise closed form of the 6x6 channel-parameter FIM, summed over the (k, m)
/// grid with the Doppler-dependent ICI columns. Parallel over subcarriers; the
/// reduction order is fixed, so the result does not depend on the thread count.
Fim fim_5g_closed(const Link5G& link, const ParamVec5G& eta, int threads = 0);

/// Same quantity from central differences of noiseless_mean(). Intended for small grids.
Fim fim_5g_numeric(const Link5G& link, const ParamVec5G& eta);

enum class PulseShape { kRectangular, kSampled };

/// L1-style spreading-code signal. `samples` holds r(t) on a uniform grid over
/// one chip [0, T_c] (endpoints included) when pulse == kSampled.
struct GnssSignalConfig {
  double cn0_dbhz = 40.0;
  double T_so = 0.3;
  double W = 1.023e6;
  double T_c = 1.0 / 1.023e6;
  long long N_so = 306900;
  PulseShape pulse = PulseShape::kRectangular;
  std::vector<double> samples;

  void validate() const;
};

/// Effective bandwidth squared (Hz^2) over [-W/2, W/2], unit-energy pulse.
double effective_bandwidth_sq(const GnssSignalConfig& cfg);
/// Effective time squared (s^2) over the observation window, time measured from its centre.
double effective_time_sq(const GnssSignalConfig& cfg);
/// 4 pi^2 (P_s/N_0) T_so diag(W_eff^2, T_eff^2).
Fim fim_gnss(const GnssSignalConfig& cfg);

}  // namespace hcrb

#endif  // HCRB_FIM_CORE_HPP
