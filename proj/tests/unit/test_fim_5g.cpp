// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"
#include "hcrb/fim_core.hpp"
#include "hcrb/oracle.hpp"

using namespace hcrb;

namespace {

// Relative error after scaling both matrices by diag(reference)^-1/2, so that
// the angle, delay and Doppler blocks are all compared on an equal footing.
double equilibrated_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& ref) {
  Eigen::VectorXd d = ref.diagonal().cwiseAbs().cwiseSqrt();
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = d(i) > 0 ? 1.0 / d(i) : 1.0;
  const Eigen::MatrixXd A = d.asDiagonal() * a * d.asDiagonal();
  const Eigen::MatrixXd R = d.asDiagonal() * ref * d.asDiagonal();
  return (A - R).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Fim5gClosed, MatchesFiniteDifferenceOracle) {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 50; ++i) {
    const oracle::SmallLink L = oracle::random_small_link(rng);
    ASSERT_NE(L.eta.f_d, 0.0);
    const Fim closed = fim_5g_closed(L.link(), L.eta);
    const Fim numeric = fim_5g_numeric(L.link(), L.eta);
    EXPECT_LE(oracle::relative_frobenius(closed.values(), numeric.values()), 1e-5) << "case " << i;
    EXPECT_LE(equilibrated_error(closed.values(), numeric.values()), 1e-5) << "case " << i;
  }
}

TEST(Fim5gClosed, SymmetricAndPositiveSemidefinite) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const oracle::SmallLink L = oracle::random_small_link(rng);
    const Fim J = fim_5g_closed(L.link(), L.eta);
    EXPECT_TRUE(J.is_symmetric());
    EXPECT_TRUE(J.is_psd());
    EXPECT_EQ(J.labels(), labels_5g());
  }
}

TEST(Fim5gClosed, ZeroSubcarrierCarriesNoDelayInformation) {
  std::mt19937_64 rng(99);
  oracle::SmallLink L = oracle::random_small_link(rng);
  L.ofdm.ici_halfwidth = 0;
  // Energy on k = 0 only.
  for (auto& X : L.pilots.symbols) {
    const Eigen::VectorXcd keep = X.col(L.ofdm.K / 2);
    X.setZero();
    X.col(L.ofdm.K / 2) = keep;
  }
  const Fim J = fim_5g_closed(L.link(), L.eta);
  for (int a = 0; a < 6; ++a) {
    EXPECT_EQ(J(ParamVec5G::kTau, a), 0.0);
    EXPECT_EQ(J(a, ParamVec5G::kTau), 0.0);
  }
  EXPECT_GT(J(ParamVec5G::kThetaG, ParamVec5G::kThetaG), 0.0);
}

TEST(Fim5gClosed, LinearInPower) {
  std::mt19937_64 rng(5);
  oracle::SmallLink L = oracle::random_small_link(rng);
  const Fim J1 = fim_5g_closed(L.link(), L.eta);
  L.power.pn0_dbhz += 10.0 * std::log10(2.0);
  const Fim J2 = fim_5g_closed(L.link(), L.eta);
  EXPECT_LT((J2.values() - 2.0 * J1.values()).norm(), 1e-12 * J1.values().norm());
}

TEST(Fim5gClosed, InvariantToGlobalPilotPhase) {
  std::mt19937_64 rng(6);
  oracle::SmallLink L = oracle::random_small_link(rng);
  const Fim J1 = fim_5g_closed(L.link(), L.eta);
  for (auto& X : L.pilots.symbols) X *= std::polar(1.0, 1.234);
  const Fim J2 = fim_5g_closed(L.link(), L.eta);
  EXPECT_LT((J2.values() - J1.values()).norm(), 1e-12 * J1.values().norm());
}

TEST(Fim5gClosed, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(8);
  const oracle::SmallLink L = oracle::random_small_link(rng);
  const Fim a = fim_5g_closed(L.link(), L.eta, 1);
  const Fim b = fim_5g_closed(L.link(), L.eta, 3);
  EXPECT_EQ(a.values(), b.values());
}

TEST(Fim5gClosed, SingularCombiner) {
  std::mt19937_64 rng(10);
  oracle::SmallLink L;
  do {
    L = oracle::random_small_link(rng);
  } while (L.ofdm.N_s < 2);
  // Identical receive beams make every combiner rank one.
  for (Eigen::Index c = 1; c < L.beams.W_rf.cols(); ++c) L.beams.W_rf.col(c) = L.beams.W_rf.col(0);
  try {
    fim_5g_closed(L.link(), L.eta);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularCombiner);
  }
}

TEST(Fim5gNumeric, SymmetricAndZeroAtZeroPower) {
  std::mt19937_64 rng(12);
  oracle::SmallLink L = oracle::random_small_link(rng);
  EXPECT_TRUE(fim_5g_numeric(L.link(), L.eta).is_symmetric(1e-6));
  L.power.pn0_dbhz = -std::numeric_limits<double>::infinity();
  EXPECT_EQ(fim_5g_numeric(L.link(), L.eta).values().norm(), 0.0);
  EXPECT_EQ(fim_5g_closed(L.link(), L.eta).values().norm(), 0.0);
}

TEST(FimType, ChecksShapeAndLabels) {
  EXPECT_THROW(Fim(Eigen::MatrixXd::Zero(2, 3), {"a", "b"}), Error);
  EXPECT_THROW(Fim(Eigen::MatrixXd::Zero(2, 2), {"a"}), Error);
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2.5, 1;
  EXPECT_FALSE(Fim(m, {"a", "b"}).is_symmetric());
  m << 1, 2, 2, 1;  // eigenvalues 3, -1
  EXPECT_FALSE(Fim(m, {"a", "b"}).is_psd());
  EXPECT_TRUE(Fim::zero(labels_gnss()).is_psd());
}
