// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include "hcrb/bounds.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"

namespace hcrb {

namespace {

constexpr int kP = 0;  // first position row
constexpr int kV = 3;  // first velocity row
constexpr int kB = 6;  // clock-bias row

struct LinkDerivatives {
  Vec3 dtau_dp, dtau_dv;
  double dtau_db;
  Vec3 dfd_dp, dfd_dv;
};

// Range-rate part shared by gNB and satellite links.
LinkDerivatives delay_doppler_derivatives(const PlatformState& s, const AnchorState& a) {
  const Vec3 pb = s.p - a.p;
  const double r = pb.norm();
  if (!(r >= kCoincidentEpsilon)) {
    throw Error(ErrorKind::kCoincidentPoints, "vehicle and anchor are closer than 1e-6 m");
  }
  const Vec3 vb = s.v - a.v;
  const double lambda = a.wavelength();
  const double f = a.carrier_freq_hz;
  const double fd = -vb.dot(pb) / (lambda * r);

  LinkDerivatives d;
  d.dfd_dp = (vb.dot(pb) * pb - r * r * vb) / (lambda * r * r * r);
  d.dfd_dv = -pb / (lambda * r);
  // tau_b = (1 + f_d / f) b_u + r / c
  d.dtau_dp = pb / (kSpeedOfLight * r) + (s.clock_bias / f) * d.dfd_dp;
  d.dtau_dv = (s.clock_bias / f) * d.dfd_dv;
  d.dtau_db = 1.0 + fd / f;
  return d;
}

// Jacobi equilibration: D = diag(J)^-1/2, with 1 where the diagonal vanishes.
Eigen::VectorXd equilibration(const Eigen::MatrixXd& J) {
  Eigen::VectorXd d(J.rows());
  for (Eigen::Index i = 0; i < J.rows(); ++i) {
    d(i) = J(i, i) > 0.0 ? 1.0 / std::sqrt(J(i, i)) : 1.0;
  }
  return d;
}

struct Spectrum {
  Eigen::VectorXd d;        // equilibration
  Eigen::VectorXd lambda;   // eigenvalues of D J D, ascending
  Eigen::MatrixXd vectors;  // matching eigenvectors
  Eigen::Index first_kept = 0;
  double lambda_max = 0.0;
};

Spectrum analyse(const Eigen::MatrixXd& J, double threshold) {
  Spectrum sp;
  sp.d = equilibration(J);
  Eigen::MatrixXd S = sp.d.asDiagonal() * J * sp.d.asDiagonal();
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  sp.lambda = es.eigenvalues();
  sp.vectors = es.eigenvectors();
  const Eigen::Index n = sp.lambda.size();
  sp.lambda_max = n > 0 ? sp.lambda(n - 1) : 0.0;
  sp.first_kept = n;
  if (sp.lambda_max > 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sp.lambda(i) > threshold * sp.lambda_max) {
        sp.first_kept = i;
        break;
      }
    }
  }
  return sp;
}

struct BlockBound {
  bool identifiable = false;
  double root_trace = 0.0;
};

// Information left on rows [first, first + n) once every other coordinate is
// eliminated: the generalized Schur complement E_aa - E_ab E_bb^+ E_ba of the
// equilibrated matrix, with eigenvalues at or below `floor` treated as zero.
BlockBound block_bound(const Matrix7d& J, int first, int n, double threshold) {
  const Eigen::VectorXd d = equilibration(J);
  Matrix7d E = d.asDiagonal() * J * d.asDiagonal();
  E = 0.5 * (E + E.transpose()).eval();
  const double floor = threshold * Eigen::SelfAdjointEigenSolver<Matrix7d>(E, Eigen::EigenvaluesOnly)
                                       .eigenvalues()
                                       .maxCoeff();

  std::vector<int> a, b;
  for (int i = 0; i < 7; ++i) (i >= first && i < first + n ? a : b).push_back(i);
  const Eigen::MatrixXd Eaa = E(a, a);
  const Eigen::MatrixXd Eab = E(a, b);
  const Eigen::MatrixXd Ebb = E(b, b);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> nb(Ebb);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(nb.eigenvalues().size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    if (nb.eigenvalues()(i) > floor) inv(i) = 1.0 / nb.eigenvalues()(i);
  }
  const Eigen::MatrixXd Ebb_pinv = nb.eigenvectors() * inv.asDiagonal() * nb.eigenvectors().transpose();
  Eigen::MatrixXd S = Eaa - Eab * Ebb_pinv * Eab.transpose();
  S = 0.5 * (S + S.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ns(S);
  BlockBound out;
  if (!(ns.eigenvalues().minCoeff() > floor)) return out;
  const Eigen::MatrixXd C = ns.eigenvectors() * ns.eigenvalues().cwiseInverse().asDiagonal() *
                            ns.eigenvectors().transpose();
  out.identifiable = true;
  out.root_trace = std::sqrt((d(a).array().square() * C.diagonal().array()).sum());
  return out;
}

double sqrt_trace(const Eigen::MatrixXd& C, int first, int n) {
  return std::sqrt(C.diagonal().segment(first, n).sum());
}

}  // namespace

std::vector<std::string> labels_state() { return {"p_x", "p_y", "p_z", "v_x", "v_y", "v_z", "b_u"}; }

TransformG transform_g(const PlatformState& state, const AnchorState& gnb) {
  const LinkDerivatives d = delay_doppler_derivatives(state, gnb);
  const Vec3 pb = state.p - gnb.p;
  const double r2 = pb.squaredNorm();
  const double rho2 = pb.x() * pb.x() + pb.y() * pb.y();
  const double rho = std::sqrt(rho2);

  TransformG T = TransformG::Zero();
  // Angles depend on position only. On the z-axis through the anchor the azimuth
  // is undefined; its gradient is left at zero there.
  if (rho > 0.0) {
    const Vec3 dtheta(pb.x() * pb.z(), pb.y() * pb.z(), -rho2);
    const Vec3 dphi(-pb.y(), pb.x(), 0.0);
    T.block<3, 1>(kP, ParamVec5G::kThetaG) = dtheta / (r2 * rho);
    T.block<3, 1>(kP, ParamVec5G::kPhiG) = dphi / rho2;
    T.block<3, 1>(kP, ParamVec5G::kThetaU) = -dtheta / (r2 * rho);
    T.block<3, 1>(kP, ParamVec5G::kPhiU) = dphi / rho2;
  }
  T.block<3, 1>(kP, ParamVec5G::kTau) = d.dtau_dp;
  T.block<3, 1>(kV, ParamVec5G::kTau) = d.dtau_dv;
  T(kB, ParamVec5G::kTau) = d.dtau_db;
  T.block<3, 1>(kP, ParamVec5G::kDoppler) = d.dfd_dp;
  T.block<3, 1>(kV, ParamVec5G::kDoppler) = d.dfd_dv;
  return T;
}

TransformS transform_s(const PlatformState& state, const AnchorState& sat) {
  const LinkDerivatives d = delay_doppler_derivatives(state, sat);
  TransformS T = TransformS::Zero();
  T.block<3, 1>(kP, 0) = d.dtau_dp;
  T.block<3, 1>(kV, 0) = d.dtau_dv;
  T(kB, 0) = d.dtau_db;
  T.block<3, 1>(kP, 1) = d.dfd_dp;
  T.block<3, 1>(kV, 1) = d.dfd_dv;
  return T;
}

Matrix7d assemble_total_fim(const std::vector<GnbTerm>& gnbs, const std::vector<SatTerm>& sats) {
  Matrix7d J = Matrix7d::Zero();
  for (const auto& g : gnbs) {
    if (g.J.size() != 6) throw Error(ErrorKind::kDimensionMismatch, "gNB FIM must be 6x6");
    J += g.T * g.J.values() * g.T.transpose();
  }
  for (const auto& s : sats) {
    if (s.J.size() != 2) throw Error(ErrorKind::kDimensionMismatch, "satellite FIM must be 2x2");
    J += s.T * s.J.values() * s.T.transpose();
  }
  return 0.5 * (J + J.transpose());
}

Matrix6d efim_position_velocity(const Matrix7d& J) {
  const double jbb = J(kB, kB);
  const Eigen::Matrix<double, 6, 1> cross = J.block<6, 1>(0, kB);
  const Matrix6d Jpv = J.topLeftCorner<6, 6>();
  if (jbb == 0.0 && cross.isZero(0.0)) return Jpv;
  if (!(jbb >= 1e-12 * std::abs(J.trace()))) {
    throw Error(ErrorKind::kDegenerateBias, "clock-bias information is too small to eliminate");
  }
  return Jpv - cross * cross.transpose() / jbb;
}

BoundReport peb_veb(const Matrix6d& efim) {
  BoundReport rep;
  const Spectrum sp = analyse(efim, RankPolicy{}.eigen_threshold);
  rep.rank = static_cast<int>(sp.lambda.size() - sp.first_kept);
  if (rep.rank > 0) rep.condition_number = sp.lambda_max / sp.lambda(sp.first_kept);
  rep.position_identifiable = rep.velocity_identifiable = rep.rank == 6;
  if (rep.rank == 6) {
    const Eigen::MatrixXd Si = sp.vectors * sp.lambda.cwiseInverse().asDiagonal() *
                               sp.vectors.transpose();
    const Eigen::MatrixXd C = sp.d.asDiagonal() * Si * sp.d.asDiagonal();
    rep.peb = sqrt_trace(C, kP, 3);
    rep.veb = sqrt_trace(C, kV, 3);
    rep.feasible = true;
  }
  return rep;
}

BoundReport compute_bounds(const Matrix7d& J, const RankPolicy& policy) {
  BoundReport rep;
  const Spectrum sp = analyse(J, policy.eigen_threshold);
  const auto n = sp.lambda.size();
  rep.rank = static_cast<int>(n - sp.first_kept);
  if (rep.rank == 0) return rep;
  rep.condition_number = sp.lambda_max / sp.lambda(sp.first_kept);

  if (rep.rank == 7) {
    const BoundReport inner = peb_veb(efim_position_velocity(J));
    if (inner.feasible) {
      rep.peb = inner.peb;
      rep.veb = inner.veb;
      rep.feasible = rep.position_identifiable = rep.velocity_identifiable = true;
      return rep;
    }
  }
  // Rank-deficient: bound each block on its own, the rest acting as nuisance.
  const BlockBound pos = block_bound(J, kP, 3, policy.eigen_threshold);
  const BlockBound vel = block_bound(J, kV, 3, policy.eigen_threshold);
  rep.position_identifiable = pos.identifiable;
  rep.velocity_identifiable = vel.identifiable;
  if (pos.identifiable) rep.peb = pos.root_trace;
  if (vel.identifiable) rep.veb = vel.root_trace;
  rep.feasible = rep.peb.has_value();
  return rep;
}

}  // namespace hcrb
