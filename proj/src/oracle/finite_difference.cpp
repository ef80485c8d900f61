// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "hcrb/constants.hpp"
#include "hcrb/geometry.hpp"
#include "hcrb/oracle.hpp"

namespace hcrb::oracle {

namespace {

using Obs = Eigen::Matrix<double, Eigen::Dynamic, 1>;

// Perturbs state coordinate i of [p, v, b_u].
PlatformState shifted(const PlatformState& s, int i, double h) {
  PlatformState out = s;
  if (i < 3) {
    out.p(i) += h;
  } else if (i < 6) {
    out.v(i - 3) += h;
  } else {
    out.clock_bias += h;
  }
  return out;
}

double step(const PlatformState& s, const AnchorState& a, int i) {
  if (i < 3) return 1e-4 * std::max(1.0, (s.p - a.p).norm());
  if (i < 6) return 1e-3 * std::max(1.0, (s.v - a.v).norm());
  return 1e-6;
}

template <class F>
Obs central(const PlatformState& s, F observe, const std::vector<bool>& is_angle, int i, double h) {
  const Obs yp = observe(shifted(s, i, h));
  const Obs ym = observe(shifted(s, i, -h));
  Obs d(yp.size());
  for (Eigen::Index c = 0; c < yp.size(); ++c) {
    double diff = yp(c) - ym(c);
    if (is_angle[static_cast<std::size_t>(c)]) diff = wrap_angle(diff);
    d(c) = diff / (2.0 * h);
  }
  return d;
}

// Central differences with one Richardson step, which cancels the h^2 term.
template <class F>
Eigen::MatrixXd jacobian(const PlatformState& s, const AnchorState& a, F observe,
                         const std::vector<bool>& is_angle) {
  const Eigen::Index n = observe(s).size();
  Eigen::MatrixXd J(7, n);
  for (int i = 0; i < 7; ++i) {
    const double h = step(s, a, i);
    const Obs coarse = central(s, observe, is_angle, i, h);
    const Obs fine = central(s, observe, is_angle, i, 0.5 * h);
    J.row(i) = ((4.0 * fine - coarse) / 3.0).transpose();
  }
  return J;
}

}  // namespace

TransformG fd_transform_g(const PlatformState& state, const AnchorState& gnb) {
  auto observe = [&](const PlatformState& s) -> Obs {
    return observe_gnb(s, gnb, ToaModel::kExact).as_vector();
  };
  return jacobian(state, gnb, observe, {true, true, true, true, false, false});
}

TransformS fd_transform_s(const PlatformState& state, const AnchorState& sat) {
  auto observe = [&](const PlatformState& s) -> Obs {
    return observe_satellite(s, sat, ToaModel::kExact).as_vector();
  };
  return jacobian(state, sat, observe, {false, false});
}

double max_entry_error(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& numeric,
                       double floor) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < analytic.rows(); ++i) {
    for (Eigen::Index j = 0; j < analytic.cols(); ++j) {
      const double err = std::abs(analytic(i, j) - numeric(i, j));
      worst = std::max(worst, err / std::max(std::abs(numeric(i, j)), floor));
    }
  }
  return worst;
}

Eigen::MatrixXcd brute_force_ici(int K, double f_d, double T_s, IciScaling scaling) {
  Eigen::MatrixXcd D(K, K);
  for (int r = 0; r < K; ++r) {
    for (int c = 0; c < K; ++c) {
      D(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(K)), -kTwoPi * r * c / K);
    }
  }
  Eigen::VectorXcd q(K);
  const double scale = scaling == IciScaling::kSymbolFraction ? 1.0 / K : 1.0;
  for (int i = 0; i < K; ++i) q(i) = scale * (i - K / 2);
  const Eigen::MatrixXcd DQD = D.adjoint() * q.asDiagonal() * D;
  return Eigen::MatrixXcd::Identity(K, K) + std::complex<double>(0.0, kTwoPi * f_d * T_s) * DQD;
}

Matrix6d efim_full_inverse(const Matrix7d& J) {
  const Matrix7d C = J.inverse();
  return C.topLeftCorner<6, 6>().inverse();
}

double rect_bandwidth_sq_quadrature(double W, double T_c) {
  using boost::math::quadrature::gauss_kronrod;
  // |R(f)|^2 = (sin(pi f T_c) / (pi f))^2, so f^2 |R|^2 = sin^2(pi f T_c) / pi^2.
  auto integrand = [&](double f) {
    if (f == 0.0) return 0.0;
    const double R = std::sin(kPi * f * T_c) / (kPi * f);
    return f * f * R * R;
  };
  const double num = gauss_kronrod<double, 61>::integrate(integrand, -0.5 * W, 0.5 * W, 15, 1e-10);
  return num / T_c;  // unit-amplitude chip energy
}

double rect_time_sq_quadrature(double T_c, long long N_so) {
  using boost::math::quadrature::gauss_kronrod;
  const double centre = 0.5 * T_c * static_cast<double>(N_so);
  double sum = 0.0;
  for (long long l = 0; l < N_so; ++l) {
    const double shift = static_cast<double>(l) * T_c - centre;
    sum += gauss_kronrod<double, 15>::integrate(
        [&](double t) { return (t + shift) * (t + shift); }, 0.0, T_c, 0, 1e-12);
  }
  return sum / static_cast<double>(N_so) / T_c;
}

double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& reference) {
  const double ref = reference.norm();
  return ref > 0.0 ? (a - reference).norm() / ref : (a - reference).norm();
}

}  // namespace hcrb::oracle
