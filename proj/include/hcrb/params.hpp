// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_PARAMS_HPP
#define HCRB_PARAMS_HPP

#include <Eigen/Core>

namespace hcrb {

/// Channel parameters of one gNB link, ordered
/// [theta_g, phi_g, theta_u, phi_u, tau_b, f_d].
struct ParamVec5G {
  double theta_g = 0.0;
  double phi_g = 0.0;
  double theta_u = 0.0;
  double phi_u = 0.0;
  double tau_b = 0.0;  // s
  double f_d = 0.0;    // Hz

  static constexpr int kSize = 6;
  enum Index { kThetaG = 0, kPhiG, kThetaU, kPhiU, kTau, kDoppler };

  Eigen::Matrix<double, 6, 1> as_vector() const {
    return (Eigen::Matrix<double, 6, 1>() << theta_g, phi_g, theta_u, phi_u, tau_b, f_d).finished();
  }
  static ParamVec5G from_vector(const Eigen::Matrix<double, 6, 1>& x) {
    return {x(0), x(1), x(2), x(3), x(4), x(5)};
  }
};

/// Channel parameters of one satellite link, ordered [tau_b, f_d].
struct ParamVecGnss {
  double tau_b = 0.0;
  double f_d = 0.0;

  static constexpr int kSize = 2;

  Eigen::Vector2d as_vector() const { return {tau_b, f_d}; }
};

}  // namespace hcrb

#endif  // HCRB_PARAMS_HPP
