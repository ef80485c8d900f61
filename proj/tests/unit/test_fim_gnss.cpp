// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <gtest/gtest.h>

#include <cmath>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"
#include "hcrb/fim_core.hpp"
#include "hcrb/oracle.hpp"

using namespace hcrb;

namespace {

GnssSignalConfig flat_sampled(int n = 65) {
  GnssSignalConfig c;
  c.pulse = PulseShape::kSampled;
  c.samples.assign(static_cast<std::size_t>(n), 1.0);
  return c;
}

}  // namespace

TEST(EffectiveBandwidth, RectangularClosedForm) {
  const GnssSignalConfig c;
  EXPECT_NEAR(effective_bandwidth_sq(c), 1.023e6 * 1.023e6 / (2 * kPi * kPi), 1e-3);
  EXPECT_NEAR(effective_bandwidth_sq(c) / 5.302e10, 1.0, 1e-3);
}

TEST(EffectiveBandwidth, ScalesWithBandwidthSquared) {
  GnssSignalConfig c;
  const double base = effective_bandwidth_sq(c);
  c.W *= 3.0;
  EXPECT_NEAR(effective_bandwidth_sq(c), 9.0 * base, 1e-6 * base);
}

TEST(EffectiveBandwidth, SampledRectangleMatchesClosedForm) {
  const double closed = effective_bandwidth_sq(GnssSignalConfig{});
  EXPECT_NEAR(effective_bandwidth_sq(flat_sampled()) / closed, 1.0, 1e-2);
  EXPECT_NEAR(effective_bandwidth_sq(flat_sampled(2)) / closed, 1.0, 1e-2);
}

TEST(EffectiveBandwidth, MatchesIndependentQuadrature) {
  const GnssSignalConfig c;
  const double q = oracle::rect_bandwidth_sq_quadrature(c.W, c.T_c);
  EXPECT_NEAR(effective_bandwidth_sq(c) / q, 1.0, 1e-2);
}

TEST(EffectiveBandwidth, ZeroEnergyPulseFails) {
  GnssSignalConfig c = flat_sampled();
  std::fill(c.samples.begin(), c.samples.end(), 0.0);
  try {
    effective_bandwidth_sq(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kQuadratureFailure);
  }
}

TEST(EffectiveTime, RectangularClosedForm) {
  const GnssSignalConfig c;
  EXPECT_NEAR(effective_time_sq(c), 7.5e-3, 1e-12);
}

TEST(EffectiveTime, ScalesWithWindowSquared) {
  GnssSignalConfig c;
  const double base = effective_time_sq(c);
  c.N_so *= 2;
  c.T_so *= 2;
  EXPECT_NEAR(effective_time_sq(c), 4.0 * base, 1e-9 * base);
}

TEST(EffectiveTime, SingleChipIsCentred) {
  GnssSignalConfig c = flat_sampled();
  c.N_so = 1;
  c.T_so = c.T_c;
  EXPECT_NEAR(effective_time_sq(c) / (c.T_c * c.T_c / 12.0), 1.0, 1e-9);
}

TEST(EffectiveTime, SampledMatchesClosedFormAndQuadrature) {
  const GnssSignalConfig c;
  const double closed = effective_time_sq(c);
  EXPECT_NEAR(effective_time_sq(flat_sampled()) / closed, 1.0, 1e-9);
  EXPECT_NEAR(oracle::rect_time_sq_quadrature(c.T_c, c.N_so) / closed, 1.0, 1e-2);
}

TEST(FimGnss, L1Values) {
  const Fim J = fim_gnss(GnssSignalConfig{});
  EXPECT_NEAR(J(0, 0) / 6.279e15, 1.0, 1e-3);
  EXPECT_NEAR(kSpeedOfLight / std::sqrt(J(0, 0)), 3.78, 0.01);
  EXPECT_NEAR(J(1, 1), 888.3, 0.1);
  const double sigma_f = 1.0 / std::sqrt(J(1, 1));
  EXPECT_NEAR(sigma_f, 0.0336, 1e-4);
  EXPECT_NEAR(sigma_f * kSpeedOfLight / 1575.42e6, 6.4e-3, 1e-4);
}

TEST(FimGnss, DiagonalWithExactZeroCrossTerm) {
  const Fim J = fim_gnss(flat_sampled());
  EXPECT_EQ(J(0, 1), 0.0);
  EXPECT_EQ(J(1, 0), 0.0);
  EXPECT_TRUE(J.is_psd());
  EXPECT_EQ(J.labels(), labels_gnss());
}

TEST(FimGnss, TenDbMoreIsTenTimesTheInformation) {
  GnssSignalConfig c;
  const Fim a = fim_gnss(c);
  c.cn0_dbhz += 10.0;
  const Fim b = fim_gnss(c);
  EXPECT_NEAR(b(0, 0) / a(0, 0), 10.0, 1e-12);
  EXPECT_NEAR(b(1, 1) / a(1, 1), 10.0, 1e-12);
}

TEST(GnssSignalConfig, RejectsInconsistentWindow) {
  GnssSignalConfig c;
  c.T_so = 0.31;
  EXPECT_THROW(c.validate(), Error);
  GnssSignalConfig d = flat_sampled();
  d.samples.resize(1);
  EXPECT_THROW(d.validate(), Error);
}
