// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <string>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"
#include "hcrb/fim_core.hpp"

namespace hcrb {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-8;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

// Piecewise-linear r(t) on [0, T_c] through the sample table.
struct SampledPulse {
  const std::vector<double>& r;
  double T_c;

  std::size_t segments() const { return r.size() - 1; }
  double step() const { return T_c / static_cast<double>(segments()); }

  // Integrates g(t, r(t)) segment by segment with a rule exact for low-degree polynomials.
  template <class G>
  auto integrate(G g) const {
    using R = decltype(g(0.0, 0.0));
    R total{};
    const double h = step();
    for (std::size_t i = 0; i < segments(); ++i) {
      const double t0 = static_cast<double>(i) * h;
      const double r0 = r[i];
      const double slope = (r[i + 1] - r[i]) / h;
      total += gauss<double, 20>::integrate(
          [&](double t) { return g(t, r0 + slope * (t - t0)); }, t0, t0 + h);
    }
    return total;
  }

  double energy() const {
    return integrate([](double, double v) { return v * v; });
  }

  std::complex<double> spectrum(double f) const {
    return integrate([f](double t, double v) {
      return std::complex<double>(v, 0.0) * std::polar(1.0, -kTwoPi * f * t);
    });
  }
};

}  // namespace

void GnssSignalConfig::validate() const {
  require(std::isfinite(cn0_dbhz), "cn0_dbhz must be finite");
  require(W > 0.0 && std::isfinite(W), "W must be positive");
  require(T_c > 0.0 && std::isfinite(T_c), "T_c must be positive");
  require(N_so >= 1, "N_so must be >= 1");
  require(T_so > 0.0 && std::abs(T_so - static_cast<double>(N_so) * T_c) <= 1e-9 * T_so,
          "T_so must equal N_so * T_c");
  if (pulse == PulseShape::kSampled) {
    require(samples.size() >= 2, "sampled pulse needs at least two samples");
    for (double v : samples) require(std::isfinite(v), "pulse samples must be finite");
  }
}

double effective_bandwidth_sq(const GnssSignalConfig& cfg) {
  cfg.validate();
  if (cfg.pulse == PulseShape::kRectangular) return cfg.W * cfg.W / (2.0 * kPi * kPi);

  const SampledPulse pulse{cfg.samples, cfg.T_c};
  const double energy = pulse.energy();
  if (!(energy > 0.0)) throw Error(ErrorKind::kQuadratureFailure, "pulse has zero energy");
  double err = 0.0;
  const double num = gauss_kronrod<double, 61>::integrate(
      [&](double f) { return f * f * std::norm(pulse.spectrum(f)); }, -0.5 * cfg.W, 0.5 * cfg.W,
      15, kQuadTol, &err);
  if (!std::isfinite(num) || err > 1e2 * kQuadTol * std::abs(num)) {
    throw Error(ErrorKind::kQuadratureFailure,
                "effective bandwidth integral did not converge (error estimate " +
                    std::to_string(err) + ")");
  }
  return num / energy;
}

double effective_time_sq(const GnssSignalConfig& cfg) {
  cfg.validate();
  if (cfg.pulse == PulseShape::kRectangular) return cfg.T_so * cfg.T_so / 12.0;

  // Mean over chips l of (t + l T_c - T_so/2)^2, summed in closed form.
  const double n = static_cast<double>(cfg.N_so);
  const double centre = 0.5 * cfg.T_so;
  const double Tc = cfg.T_c;
  auto tbar_sq = [&](double t) {
    const double d = t - centre;
    return d * d + d * Tc * (n - 1.0) + Tc * Tc * (n - 1.0) * (2.0 * n - 1.0) / 6.0;
  };
  const SampledPulse pulse{cfg.samples, cfg.T_c};
  const double energy = pulse.energy();
  const double num = pulse.integrate([&](double t, double v) { return tbar_sq(t) * v * v; });
  if (!(energy > 0.0) || !std::isfinite(num)) {
    throw Error(ErrorKind::kQuadratureFailure, "effective time integral is not finite");
  }
  return num / energy;
}

Fim fim_gnss(const GnssSignalConfig& cfg) {
  const double snr = std::pow(10.0, cfg.cn0_dbhz / 10.0);
  const double scale = 4.0 * kPi * kPi * snr * cfg.T_so;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2, 2);
  J(0, 0) = scale * effective_bandwidth_sq(cfg);
  J(1, 1) = scale * effective_time_sq(cfg);
  return Fim(std::move(J), labels_gnss());
}

}  // namespace hcrb
