// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_WAVEFORM5G_HPP
#define HCRB_WAVEFORM5G_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "hcrb/array_model.hpp"
#include "hcrb/params.hpp"

namespace hcrb {

/// Time axis used for the diagonal matrix Q in the ICI operator.
///  kSymbolFraction: Q / K, i.e. time in units of the useful symbol T_s (default).
///  kSampleIndex:    Q as printed, i.e. time in units of one sample.
enum class IciScaling { kSymbolFraction, kSampleIndex };

struct OfdmConfig {
  int K = 1024;           // subcarriers, k = -K/2 .. K/2-1
  int M = 1000;           // OFDM symbols
  double delta_f = 0.0;   // subcarrier spacing (Hz)
  double f_c = 0.0;       // carrier (Hz)
  double T0 = 0.0;        // symbol duration incl. cyclic prefix (s)
  int N_b = 16;           // beams in the sweep
  int N_s = 1;            // streams per symbol
  int ici_halfwidth = 1;  // neighbours kept on each side of the diagonal
  IciScaling ici_scaling = IciScaling::kSymbolFraction;

  double T_s() const { return 1.0 / delta_f; }
  double T_cp() const { return T0 - T_s(); }
  int k_min() const { return -K / 2; }
  int k_max() const { return K / 2 - 1; }
  double subcarrier_freq(int k) const { return f_c + k * delta_f; }

  /// Throws InvalidArgument on a violated invariant.
  void validate() const;
};

/// P_g / N_0 and the antenna counts entering gamma_0.
struct Power5GConfig {
  double pn0_dbhz = 30.0;
  int N_g = 1;
  int N_u = 1;

  /// Per-sample SNR P_g / (N_0 K delta_f).
  double sample_snr(const OfdmConfig& cfg) const;
  /// gamma_0 = sample_snr * N_g * N_u.
  double gamma0(const OfdmConfig& cfg) const;
};

/// One N_s x K matrix per OFDM symbol; every column has unit norm.
struct PilotSet {
  std::vector<Eigen::MatrixXcd> symbols;
  std::uint64_t seed = 0;

  const Eigen::MatrixXcd& X(int m) const { return symbols[static_cast<std::size_t>(m)]; }
  /// Column for subcarrier k (k in -K/2 .. K/2-1).
  Eigen::VectorXcd x(int k, int m) const;
};

PilotSet generate_pilots(const OfdmConfig& cfg, std::uint64_t seed);

/// Azimuth fan of beams at a fixed polar angle.
struct BeamSector {
  double center_azimuth = 0.0;  // rad
  double span = 0.0;            // rad, full width
  double polar = 0.0;           // rad
};

/// Analog codebooks (one steering beam per column) plus the round-robin schedule.
/// F and W are frequency-flat; the digital stage picks N_s columns per symbol.
struct BeamformingConfig {
  Eigen::MatrixXcd F_rf;  // N_g x N_b
  Eigen::MatrixXcd W_rf;  // N_u x N_b
  int N_s = 1;
  BeamSector sector;

  int beam_count() const { return static_cast<int>(F_rf.cols()); }
  /// Number of distinct beam selections before the schedule repeats.
  int period() const;
  std::vector<int> beams(int m) const;
  Eigen::MatrixXcd F(int m) const;
  Eigen::MatrixXcd W(int m) const;
};

/// Transmit beams u(polar, phi_i); receive beams point back along the same rays
/// in the vehicle frame, i.e. (pi - polar, phi_i - phi0 - pi).
BeamformingConfig build_codebook(const OfdmConfig& cfg, const AntennaArray& tx,
                                 const AntennaArray& rx, const BeamSector& sector,
                                 double rx_phi0 = 0.0);

struct IciOperator {
  double f_d = 0.0;
  double T_s = 0.0;
  int K = 0;
  int halfwidth = 1;
  IciScaling scaling = IciScaling::kSymbolFraction;

  static IciOperator from(const OfdmConfig& cfg, double f_d);
};

/// Column of a K x K matrix restricted to a few rows; rows are subcarrier indices.
struct SparseColumn {
  std::vector<int> rows;
  std::vector<cdouble> values;
};

/// First column entry s(n) of D^H Q D (scaled per IciScaling); C_{a,b} = delta_ab + j 2 pi f_d T_s s(a - b).
cdouble ici_kernel(int n, int K, IciScaling scaling);

SparseColumn ici_column(const IciOperator& op, int k);
SparseColumn ici_column_derivative(const IciOperator& op, int k);

/// z_{k,m} = X_m c_k.
Eigen::VectorXcd apply_column(const PilotSet& pilots, int m, const SparseColumn& col);

/// Non-owning bundle of everything a single gNB link needs.
struct Link5G {
  const OfdmConfig& ofdm;
  const BeamformingConfig& beams;
  const PilotSet& pilots;
  const AntennaArray& tx;
  const AntennaArray& rx;
  const Power5GConfig& power;
};

/// Throws DimensionMismatch unless array sizes, codebook and pilots agree with the OFDM config.
void check_dimensions(const Link5G& link);

/// mu_{k,m} = kappa W^H a_u a_g^H F z, evaluated with explicit matrix products.
Eigen::VectorXcd noiseless_mean(const Link5G& link, const ParamVec5G& eta, int k, int m);

}  // namespace hcrb

#endif  // HCRB_WAVEFORM5G_HPP
