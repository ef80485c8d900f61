// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include "hcrb/waveform5g.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"

namespace hcrb {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

void require_dims(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kDimensionMismatch, what);
}

int wrap_index(int n, int K) {
  const int r = n % K;
  return r < 0 ? r + K : r;
}

}  // namespace

void OfdmConfig::validate() const {
  require(K >= 2 && K % 2 == 0, "K must be even and >= 2");
  require(M >= 1, "M must be >= 1");
  require(delta_f > 0.0 && std::isfinite(delta_f), "delta_f must be positive");
  require(f_c > 0.0 && std::isfinite(f_c), "f_c must be positive");
  require(T0 >= T_s() * (1.0 - 1e-12), "T0 must be at least the useful symbol 1/delta_f");
  require(N_s >= 1 && N_s <= N_b, "need 1 <= N_s <= N_b");
  require(ici_halfwidth >= 0, "ici_halfwidth must be >= 0");
}

double Power5GConfig::sample_snr(const OfdmConfig& cfg) const {
  return std::pow(10.0, pn0_dbhz / 10.0) / (cfg.K * cfg.delta_f);
}

double Power5GConfig::gamma0(const OfdmConfig& cfg) const {
  return sample_snr(cfg) * N_g * N_u;
}

Eigen::VectorXcd PilotSet::x(int k, int m) const {
  const Eigen::MatrixXcd& Xm = X(m);
  return Xm.col(k + static_cast<int>(Xm.cols()) / 2);
}

PilotSet generate_pilots(const OfdmConfig& cfg, std::uint64_t seed) {
  PilotSet set;
  set.seed = seed;
  set.symbols.resize(static_cast<std::size_t>(cfg.M));
  for (int m = 0; m < cfg.M; ++m) {
    // One stream per symbol so any symbol can be regenerated on its own.
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(m)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd Xm(cfg.N_s, cfg.K);
    for (int k = 0; k < cfg.K; ++k) {
      for (int s = 0; s < cfg.N_s; ++s) {
        const double re = normal(rng);
        const double im = normal(rng);
        Xm(s, k) = cdouble(re, im);
      }
      const double n = Xm.col(k).norm();
      if (n > 0.0) {
        Xm.col(k) /= n;
      } else {
        Xm.col(k).setZero();
        Xm(0, k) = 1.0;
      }
    }
    set.symbols[static_cast<std::size_t>(m)] = std::move(Xm);
  }
  return set;
}

int BeamformingConfig::period() const {
  const int nb = beam_count();
  return nb / std::gcd(nb, N_s);
}

std::vector<int> BeamformingConfig::beams(int m) const {
  const int nb = beam_count();
  std::vector<int> sel(static_cast<std::size_t>(N_s));
  const long long base = static_cast<long long>(m % period()) * N_s;
  for (int i = 0; i < N_s; ++i) sel[static_cast<std::size_t>(i)] = static_cast<int>((base + i) % nb);
  return sel;
}

Eigen::MatrixXcd BeamformingConfig::F(int m) const {
  const std::vector<int> sel = beams(m);
  Eigen::MatrixXcd out(F_rf.rows(), N_s);
  for (int i = 0; i < N_s; ++i) out.col(i) = F_rf.col(sel[static_cast<std::size_t>(i)]);
  return out / std::sqrt(static_cast<double>(N_s));
}

Eigen::MatrixXcd BeamformingConfig::W(int m) const {
  const std::vector<int> sel = beams(m);
  Eigen::MatrixXcd out(W_rf.rows(), N_s);
  for (int i = 0; i < N_s; ++i) out.col(i) = W_rf.col(sel[static_cast<std::size_t>(i)]);
  return out / std::sqrt(static_cast<double>(N_s));
}

BeamformingConfig build_codebook(const OfdmConfig& cfg, const AntennaArray& tx,
                                 const AntennaArray& rx, const BeamSector& sector, double rx_phi0) {
  if (!std::isfinite(sector.span) || !std::isfinite(sector.center_azimuth) ||
      !std::isfinite(sector.polar) || sector.span < 0.0 || (sector.span == 0.0 && cfg.N_b > 1)) {
    throw Error(ErrorKind::kInvalidSector, "beam sector span must be finite and non-empty");
  }
  require(cfg.N_b >= 1 && cfg.N_s >= 1 && cfg.N_s <= cfg.N_b, "need 1 <= N_s <= N_b");

  BeamformingConfig bf;
  bf.N_s = cfg.N_s;
  bf.sector = sector;
  bf.F_rf.resize(tx.size(), cfg.N_b);
  bf.W_rf.resize(rx.size(), cfg.N_b);
  for (int i = 0; i < cfg.N_b; ++i) {
    const double phi = cfg.N_b == 1 ? sector.center_azimuth
                                    : sector.center_azimuth - 0.5 * sector.span +
                                          i * sector.span / (cfg.N_b - 1);
    // Beams are formed at the carrier, hence lambda_k = lambda_c.
    bf.F_rf.col(i) = response(tx, sector.polar, phi, 1.0, 1.0);
    bf.W_rf.col(i) = response(rx, kPi - sector.polar, phi - rx_phi0 - kPi, 1.0, 1.0);
  }
  return bf;
}

IciOperator IciOperator::from(const OfdmConfig& cfg, double f_d) {
  return {f_d, cfg.T_s(), cfg.K, cfg.ici_halfwidth, cfg.ici_scaling};
}

cdouble ici_kernel(int n, int K, IciScaling scaling) {
  // (1/K) sum_{i=0}^{K-1} (i - K/2) w^i with w = exp(j 2 pi n / K):
  // -1/2 at n = 0, otherwise 1 / (w - 1).
  const int r = wrap_index(n, K);
  const double scale = scaling == IciScaling::kSymbolFraction ? 1.0 / K : 1.0;
  if (r == 0) return cdouble(-0.5 * scale, 0.0);
  const cdouble w = std::polar(1.0, kTwoPi * r / K);
  return scale / (w - 1.0);
}

namespace {

// Offsets a - b kept in column b, by circular distance, each listed once.
std::vector<int> kept_offsets(int K, int halfwidth) {
  std::vector<int> offs{0};
  const int h = std::min(halfwidth, K / 2);
  for (int d = 1; d <= h; ++d) {
    offs.push_back(d);
    if (wrap_index(-d, K) != wrap_index(d, K)) offs.push_back(-d);
  }
  return offs;
}

SparseColumn build_column(const IciOperator& op, int k, bool derivative) {
  if (op.K < 2 || k < -op.K / 2 || k >= op.K / 2) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "subcarrier " + std::to_string(k) + " outside [-K/2, K/2)");
  }
  if (op.halfwidth < 0) throw Error(ErrorKind::kInvalidArgument, "negative ICI halfwidth");
  const cdouble jt(0.0, kTwoPi * op.T_s);
  const cdouble factor = derivative ? jt : jt * op.f_d;
  SparseColumn col;
  for (int d : kept_offsets(op.K, op.halfwidth)) {
    const int row = wrap_index(k + d + op.K / 2, op.K) - op.K / 2;
    cdouble v = factor * ici_kernel(d, op.K, op.scaling);
    if (d == 0 && !derivative) v += 1.0;
    col.rows.push_back(row);
    col.values.push_back(v);
  }
  return col;
}

}  // namespace

SparseColumn ici_column(const IciOperator& op, int k) { return build_column(op, k, false); }

SparseColumn ici_column_derivative(const IciOperator& op, int k) {
  return build_column(op, k, true);
}

Eigen::VectorXcd apply_column(const PilotSet& pilots, int m, const SparseColumn& col) {
  const Eigen::MatrixXcd& Xm = pilots.X(m);
  const int half = static_cast<int>(Xm.cols()) / 2;
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(Xm.rows());
  for (std::size_t i = 0; i < col.rows.size(); ++i) z += Xm.col(col.rows[i] + half) * col.values[i];
  return z;
}

void check_dimensions(const Link5G& link) {
  const OfdmConfig& cfg = link.ofdm;
  cfg.validate();
  require_dims(link.beams.F_rf.rows() == link.tx.size(), "F rows != gNB element count");
  require_dims(link.beams.W_rf.rows() == link.rx.size(), "W rows != vehicle element count");
  require_dims(link.beams.F_rf.cols() == cfg.N_b && link.beams.W_rf.cols() == cfg.N_b,
               "codebook beam count != N_b");
  require_dims(link.beams.N_s == cfg.N_s, "codebook N_s != OFDM N_s");
  require_dims(link.power.N_g == link.tx.size() && link.power.N_u == link.rx.size(),
               "power antenna counts != array sizes");
  require_dims(static_cast<int>(link.pilots.symbols.size()) == cfg.M, "pilot symbol count != M");
  for (const auto& Xm : link.pilots.symbols) {
    require_dims(Xm.rows() == cfg.N_s && Xm.cols() == cfg.K, "pilot matrix is not N_s x K");
  }
}

Eigen::VectorXcd noiseless_mean(const Link5G& link, const ParamVec5G& eta, int k, int m) {
  check_dimensions(link);
  const OfdmConfig& cfg = link.ofdm;
  if (k < cfg.k_min() || k > cfg.k_max() || m < 0 || m >= cfg.M) {
    throw Error(ErrorKind::kIndexOutOfRange, "(k, m) outside the OFDM grid");
  }
  const double lambda_c = kSpeedOfLight / cfg.f_c;
  const double lambda_k = kSpeedOfLight / cfg.subcarrier_freq(k);
  const Eigen::VectorXcd a_g = response(link.tx, eta.theta_g, eta.phi_g, lambda_k, lambda_c);
  const Eigen::VectorXcd a_u = response(link.rx, eta.theta_u, eta.phi_u, lambda_k, lambda_c);
  const Eigen::MatrixXcd H = a_u * a_g.adjoint();
  const Eigen::VectorXcd z = apply_column(link.pilots, m, ici_column(IciOperator::from(cfg, eta.f_d), k));
  const double amp = std::sqrt(link.power.gamma0(cfg));
  const cdouble kappa = amp * std::polar(1.0, -kTwoPi * k * cfg.delta_f * eta.tau_b) *
                        std::polar(1.0, kTwoPi * eta.f_d * cfg.T0 * m);
  return kappa * (link.beams.W(m).adjoint() * H * link.beams.F(m) * z);
}

}  // namespace hcrb
