// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <gtest/gtest.h>

#include <random>

#include "hcrb/array_model.hpp"
#include "hcrb/constants.hpp"
#include "hcrb/geometry.hpp"

using namespace hcrb;

TEST(BuildUra, SingleElementAtOrigin) {
  const AntennaArray a = build_ura(1, 1, Boresight::kPlusZ);
  ASSERT_EQ(a.size(), 1);
  EXPECT_TRUE(a.locations.row(0).isZero());
}

TEST(BuildUra, TwoByTwoCentredAndDistinct) {
  const AntennaArray a = build_ura(2, 2, Boresight::kPlusZ);
  ASSERT_EQ(a.size(), 4);
  EXPECT_NEAR(a.locations.colwise().sum().norm(), 0.0, 1e-15);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) EXPECT_GT((a.locations.row(i) - a.locations.row(j)).norm(), 0.5);
  }
  EXPECT_TRUE(a.locations.col(2).isZero());
}

TEST(BuildUra, TwelveByTwelveFacingX) {
  const AntennaArray a = build_ura(12, 12, Boresight::kPlusX);
  ASSERT_EQ(a.size(), 144);
  EXPECT_TRUE(a.locations.col(0).isZero());  // grid lies in the y-z plane
  double max_sep = 0.0;
  for (int i = 0; i < 144; ++i) {
    for (int j = 0; j < 144; ++j) max_sep = std::max(max_sep, (a.locations.row(i) - a.locations.row(j)).norm());
  }
  EXPECT_NEAR(max_sep, std::sqrt(11.0 * 11.0 + 11.0 * 11.0), 1e-12);
}

TEST(BuildUra, PlaneFollowsBoresight) {
  EXPECT_TRUE(build_ura(3, 2, Boresight::kPlusY).locations.col(1).isZero());
  EXPECT_TRUE(build_ura(3, 2, Boresight::kPlusZ).locations.col(2).isZero());
}

TEST(Response, SingleElementIsOne) {
  const AntennaArray a = build_ura(1, 1, Boresight::kPlusZ);
  const auto v = response(a, 0.7, -1.2, 0.9, 1.0);
  EXPECT_NEAR(std::abs(v(0) - cdouble(1.0, 0.0)), 0.0, 1e-15);
}

TEST(Response, BroadsideHasEqualPhases) {
  const AntennaArray a = build_ura(4, 3, Boresight::kPlusX);
  const auto v = response(a, kPi / 2, 0.0, 0.97, 1.0);  // u = +x
  for (Eigen::Index i = 0; i < v.size(); ++i) EXPECT_NEAR(std::abs(v(i) - v(0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(0)), 1.0 / std::sqrt(12.0), 1e-15);
}

TEST(Response, UnitNormAndPeriodicInAzimuth) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(0.0, kPi), p(-kPi, kPi), s(0.98, 1.02);
  const AntennaArray a = build_ura(8, 8, Boresight::kPlusZ);
  for (int i = 0; i < 200; ++i) {
    const double th = t(rng), ph = p(rng), lk = s(rng);
    const auto v = response(a, th, ph, lk, 1.0);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LT((v - response(a, th, ph + kTwoPi, lk, 1.0)).norm(), 1e-10);
  }
}

TEST(Response, SubcarrierWavelengthScalesPhase) {
  // Element at half a carrier wavelength along +z, ray along +z: phase = pi * lambda_c / lambda_k.
  AntennaArray a;
  a.locations.resize(2, 3);
  a.locations << 0, 0, 0, 0, 0, 1;
  const double lc = 0.01, lk = 0.0098;
  const auto v = response(a, 0.0, 0.0, lk, lc);
  EXPECT_NEAR(std::arg(v(1) / v(0)), wrap_angle(-kPi * lc / lk), 1e-12);
}

TEST(ResponseDerivatives, ZeroForSingleElement) {
  const auto d = response_derivatives(build_ura(1, 1, Boresight::kPlusZ), 0.4, 0.2, 1.0, 1.0);
  EXPECT_EQ(d.d_theta.norm(), 0.0);
  EXPECT_EQ(d.d_phi.norm(), 0.0);
}

TEST(ResponseDerivatives, AzimuthDerivativeVanishesAtPole) {
  const auto d = response_derivatives(build_ura(4, 4, Boresight::kPlusZ), 0.0, 0.9, 1.0, 1.0);
  EXPECT_LT(d.d_phi.norm(), 1e-15);
  EXPECT_GT(d.d_theta.norm(), 0.1);
}

TEST(ResponseDerivatives, MatchCentralDifferences) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(0.05, kPi - 0.05), p(-kPi, kPi), s(0.98, 1.02);
  const Boresight faces[] = {Boresight::kPlusX, Boresight::kPlusY, Boresight::kPlusZ};
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const AntennaArray a = build_ura(1 + i % 5, 1 + (i / 5) % 4, faces[i % 3]);
    if (a.size() == 1) continue;
    const double th = t(rng), ph = p(rng), lk = s(rng);
    const auto d = response_derivatives(a, th, ph, lk, 1.0);
    const Eigen::VectorXcd ft =
        (response(a, th + h, ph, lk, 1.0) - response(a, th - h, ph, lk, 1.0)) / (2 * h);
    const Eigen::VectorXcd fp =
        (response(a, th, ph + h, lk, 1.0) - response(a, th, ph - h, lk, 1.0)) / (2 * h);
    if (ft.norm() > 1e-6) EXPECT_LT((d.d_theta - ft).norm() / ft.norm(), 1e-6);
    if (fp.norm() > 1e-6) EXPECT_LT((d.d_phi - fp).norm() / fp.norm(), 1e-6);
  }
}

TEST(ResponseDerivatives, OrthogonalToResponseForCentredArrays) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> t(0.0, kPi), p(-kPi, kPi);
  const AntennaArray a = build_ura(5, 3, Boresight::kPlusY);
  for (int i = 0; i < 100; ++i) {
    const Steering s = steering(a, t(rng), p(rng), 1.01, 1.0);
    EXPECT_NEAR(std::real(s.a.dot(s.d_theta)), 0.0, 1e-13);
    EXPECT_NEAR(std::real(s.a.dot(s.d_phi)), 0.0, 1e-13);
  }
}
