// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <exception>
#include <thread>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"
#include "hcrb/fim_core.hpp"

namespace hcrb {

Fim::Fim(Eigen::MatrixXd values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (values_.rows() != values_.cols() ||
      static_cast<std::size_t>(values_.rows()) != labels_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "FIM must be square with one label per row");
  }
}

Fim Fim::zero(std::vector<std::string> labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  return Fim(Eigen::MatrixXd::Zero(n, n), std::move(labels));
}

bool Fim::is_symmetric(double rel_tol) const {
  const double scale = std::max(values_.cwiseAbs().maxCoeff(), 1e-300);
  return (values_ - values_.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool Fim::is_psd(double rel_tol) const {
  if (values_.size() == 0) return true;
  const Eigen::MatrixXd sym = 0.5 * (values_ + values_.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -rel_tol * std::abs(sym.trace());
}

std::vector<std::string> labels_5g() {
  return {"theta_g", "phi_g", "theta_u", "phi_u", "tau_b", "f_d"};
}

std::vector<std::string> labels_gnss() { return {"tau_b", "f_d"}; }

namespace {

constexpr int kUpper = 21;  // independent entries of a 6x6 symmetric matrix
using Upper = Eigen::Matrix<double, kUpper, 1>;

// Deterministic binary-tree sum; the shape depends only on the element count.
Upper tree_sum(std::vector<Upper>& buf, std::size_t n) {
  if (n == 0) return Upper::Zero();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) buf[half] = buf[n - 1];
    n = half + n % 2;
  }
  return buf[0];
}

// Receive-side vector in each parameter's derivative: 0 = a_u, 1 = d a_u/d theta,
// 2 = d a_u/d phi.
constexpr std::array<int, 6> kRxSlot = {0, 0, 1, 2, 0, 0};

struct SlotCache {
  // Rows v^H F for v in {a_g, da_g/dtheta, da_g/dphi}: 3 x N_s.
  Eigen::MatrixXcd tx;
  // omega(i, j) = (W^H u_i)^H (W^H W)^{-1} (W^H u_j).
  Eigen::Matrix3cd omega;
};

}  // namespace

Fim fim_5g_closed(const Link5G& link, const ParamVec5G& eta, int threads) {
  check_dimensions(link);
  const OfdmConfig& cfg = link.ofdm;
  const BeamformingConfig& bf = link.beams;
  const int K = cfg.K;
  const int M = cfg.M;
  const int P = bf.period();

  // Combiner Gram inverses are frequency-flat: one per schedule slot.
  std::vector<Eigen::MatrixXcd> W_slot(static_cast<std::size_t>(P));
  std::vector<Eigen::MatrixXcd> F_slot(static_cast<std::size_t>(P));
  std::vector<Eigen::MatrixXcd> gram_inv(static_cast<std::size_t>(P));
  for (int p = 0; p < P; ++p) {
    const auto sp = static_cast<std::size_t>(p);
    W_slot[sp] = bf.W(p);
    F_slot[sp] = bf.F(p);
    const Eigen::MatrixXcd G = W_slot[sp].adjoint() * W_slot[sp];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > 1e12) {
      throw Error(ErrorKind::kSingularCombiner,
                  "W^H W is not invertible for schedule slot " + std::to_string(p));
    }
    gram_inv[sp] = G.inverse();
  }

  const double lambda_c = kSpeedOfLight / cfg.f_c;
  const IciOperator ici = IciOperator::from(cfg, eta.f_d);
  const cdouble alpha_f(0.0, -kTwoPi * cfg.delta_f);
  const double two_pi_t0 = kTwoPi * cfg.T0;

  std::vector<Upper> per_k(static_cast<std::size_t>(K));

  auto process_k = [&](int ki, std::vector<Upper>& buf) {
    const int k = ki + cfg.k_min();
    const double lambda_k = kSpeedOfLight / cfg.subcarrier_freq(k);
    const Steering sg = steering(link.tx, eta.theta_g, eta.phi_g, lambda_k, lambda_c);
    const Steering su = steering(link.rx, eta.theta_u, eta.phi_u, lambda_k, lambda_c);

    std::vector<SlotCache> slots(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p) {
      const auto sp = static_cast<std::size_t>(p);
      SlotCache& sc = slots[sp];
      sc.tx.resize(3, cfg.N_s);
      sc.tx.row(0) = sg.a.adjoint() * F_slot[sp];
      sc.tx.row(1) = sg.d_theta.adjoint() * F_slot[sp];
      sc.tx.row(2) = sg.d_phi.adjoint() * F_slot[sp];
      Eigen::MatrixXcd Y(cfg.N_s, 3);
      Y.col(0) = W_slot[sp].adjoint() * su.a;
      Y.col(1) = W_slot[sp].adjoint() * su.d_theta;
      Y.col(2) = W_slot[sp].adjoint() * su.d_phi;
      sc.omega = Y.adjoint() * gram_inv[sp] * Y;
    }

    const SparseColumn c = ici_column(ici, k);
    const SparseColumn cd = ici_column_derivative(ici, k);
    const cdouble tau_factor = alpha_f * static_cast<double>(k);

    for (int m = 0; m < M; ++m) {
      const SlotCache& sc = slots[static_cast<std::size_t>(m % P)];
      const Eigen::VectorXcd z = apply_column(link.pilots, m, c);
      const Eigen::VectorXcd zd = apply_column(link.pilots, m, cd);
      const Eigen::Vector3cd s = sc.tx * z;
      const cdouble t = (sc.tx.row(0) * zd).value();  // a_g^H F z-dot

      std::array<cdouble, 6> S;
      S[0] = s(1);
      S[1] = s(2);
      S[2] = s(0);
      S[3] = s(0);
      S[4] = tau_factor * s(0);
      S[5] = cdouble(0.0, two_pi_t0 * m) * s(0) + t;

      Upper& acc = buf[static_cast<std::size_t>(m)];
      int idx = 0;
      for (int a = 0; a < 6; ++a) {
        const cdouble ca = std::conj(S[static_cast<std::size_t>(a)]);
        for (int b = a; b < 6; ++b, ++idx) {
          acc(idx) = std::real(ca * S[static_cast<std::size_t>(b)] *
                               sc.omega(kRxSlot[static_cast<std::size_t>(a)],
                                        kRxSlot[static_cast<std::size_t>(b)]));
        }
      }
    }
    per_k[static_cast<std::size_t>(ki)] = tree_sum(buf, static_cast<std::size_t>(M));
  };

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(K));
  std::vector<std::exception_ptr> errors(n_threads);
  auto worker = [&](unsigned tid) {
    try {
      std::vector<Upper> buf(static_cast<std::size_t>(M));
      for (int ki = static_cast<int>(tid); ki < K; ki += static_cast<int>(n_threads)) {
        process_k(ki, buf);
      }
    } catch (...) {
      errors[tid] = std::current_exception();
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const Upper total = tree_sum(per_k, per_k.size());
  const double gamma0 = link.power.gamma0(cfg);
  Eigen::MatrixXd J(6, 6);
  int idx = 0;
  for (int a = 0; a < 6; ++a) {
    for (int b = a; b < 6; ++b, ++idx) {
      J(a, b) = J(b, a) = gamma0 * total(idx);
    }
  }
  return Fim(std::move(J), labels_5g());
}

namespace {

using MeanGrid = std::vector<Eigen::VectorXcd>;  // k-major over the (k, m) grid

MeanGrid mean_grid(const Link5G& link, const ParamVec5G& eta) {
  const OfdmConfig& cfg = link.ofdm;
  MeanGrid out;
  out.reserve(static_cast<std::size_t>(cfg.K) * static_cast<std::size_t>(cfg.M));
  for (int k = cfg.k_min(); k <= cfg.k_max(); ++k) {
    for (int m = 0; m < cfg.M; ++m) out.push_back(noiseless_mean(link, eta, k, m));
  }
  return out;
}

MeanGrid central_difference(const Link5G& link, const ParamVec5G& eta, int param, double h) {
  Eigen::Matrix<double, 6, 1> plus = eta.as_vector(), minus = eta.as_vector();
  plus(param) += h;
  minus(param) -= h;
  MeanGrid hi = mean_grid(link, ParamVec5G::from_vector(plus));
  const MeanGrid lo = mean_grid(link, ParamVec5G::from_vector(minus));
  for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = (hi[i] - lo[i]) / (2.0 * h);
  return hi;
}

double grid_norm(const MeanGrid& g) {
  double s = 0.0;
  for (const auto& v : g) s += v.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

Fim fim_5g_numeric(const Link5G& link, const ParamVec5G& eta) {
  check_dimensions(link);
  const OfdmConfig& cfg = link.ofdm;
  const std::array<double, 6> steps = {1e-6, 1e-6, 1e-6, 1e-6, 1e-6 / (cfg.K * cfg.delta_f), 1e-3};

  std::array<MeanGrid, 6> d;
  for (int a = 0; a < 6; ++a) {
    const double h = steps[static_cast<std::size_t>(a)];
    MeanGrid coarse = central_difference(link, eta, a, h);
    MeanGrid fine = central_difference(link, eta, a, 0.5 * h);
    MeanGrid diff = fine;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= coarse[i];
    const double scale = grid_norm(fine);
    if (scale > 0.0 && grid_norm(diff) > 1e-4 * scale) {
      for (std::size_t i = 0; i < fine.size(); ++i) fine[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    d[static_cast<std::size_t>(a)] = std::move(fine);
  }

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(6, 6);
  std::size_t idx = 0;
  for (int k = cfg.k_min(); k <= cfg.k_max(); ++k) {
    for (int m = 0; m < cfg.M; ++m, ++idx) {
      const Eigen::MatrixXcd Wm = link.beams.W(m);
      const Eigen::MatrixXcd gi = (Wm.adjoint() * Wm).inverse();
      for (int a = 0; a < 6; ++a) {
        const Eigen::VectorXcd wa = gi * d[static_cast<std::size_t>(a)][idx];
        for (int b = a; b < 6; ++b) {
          J(a, b) += std::real(d[static_cast<std::size_t>(b)][idx].dot(wa));
        }
      }
    }
  }
  J.triangularView<Eigen::StrictlyLower>() = J.transpose();
  return Fim(std::move(J), labels_5g());
}

}  // namespace hcrb
