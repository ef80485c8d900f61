// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_SCENARIO_HPP
#define HCRB_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcrb/array_model.hpp"
#include "hcrb/bounds.hpp"
#include "hcrb/fim_core.hpp"
#include "hcrb/geometry.hpp"
#include "hcrb/waveform5g.hpp"

namespace hcrb {

struct ArraySpec {
  int nx = 1;
  int ny = 1;
  Boresight boresight = Boresight::kPlusZ;

  AntennaArray build() const { return build_ura(nx, ny, boresight); }
  int element_count() const { return nx * ny; }
};

struct VehicleSpec {
  PlatformState state;
  ArraySpec array{8, 8, Boresight::kPlusZ};
};

struct GnbSpec {
  AnchorState anchor;  // carrier_freq_hz doubles as the OFDM carrier
  ArraySpec array{12, 12, Boresight::kPlusX};
  double pn0_dbhz = 30.0;
  OfdmConfig ofdm;     // ofdm.f_c is kept equal to anchor.carrier_freq_hz
  BeamSector sector;
  std::uint64_t pilot_seed = 1;
};

struct SatelliteSpec {
  AnchorState anchor;
  GnssSignalConfig signal;
};

struct ScenarioSpec {
  std::string name;
  std::string description;
  VehicleSpec vehicle;
  std::vector<GnbSpec> gnbs;
  std::vector<SatelliteSpec> satellites;
  std::optional<std::uint64_t> satellite_velocity_seed;  // provenance of the builtin velocities

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

struct BuiltinOptions {
  double av_height_m = 1.5;
  bool radial_away = true;  // satellite radial velocity increases the range
  std::uint64_t velocity_seed = 2026;
};

/// Scenario "A" (well-spaced satellites) or "B" (satellites on a narrow arc).
ScenarioSpec builtin_scenario(std::string_view name, const BuiltinOptions& opts = {});

/// JSON text of the normalised scenario form.
std::string scenario_to_json(const ScenarioSpec& spec);
/// `source` names the input in diagnostics.
ScenarioSpec scenario_from_json(std::string_view text, std::string_view source = "<string>");
ScenarioSpec load_scenario(const std::string& path);
void save_scenario(const ScenarioSpec& spec, const std::string& path);

struct SubsetSelector {
  std::vector<int> gnb_indices;
  std::vector<int> sat_indices;
  bool all_subsets = false;  // every non-empty subset of all anchors
};

struct ResultRow {
  std::string scenario;
  int gnb_count = 0;
  int sat_count = 0;
  std::string subset;  // e.g. "g0+g1+s0+s3"
  std::optional<double> peb_m;
  std::optional<double> veb_mps;
  bool feasible = false;
  int rank = 0;
  double condition_number = 0.0;
  double wallclock_s = 0.0;
  std::string error;  // non-empty when the row failed to compute
  std::vector<AnchorContribution> contributions;
};

struct EvaluateOptions {
  int threads = 0;  // 0: hardware concurrency
};

std::vector<ResultRow> evaluate(const ScenarioSpec& spec, const SubsetSelector& selector,
                                const EvaluateOptions& opts = {});

/// Building blocks of evaluate(), exposed for tests and tools.
Fim gnb_fim(const ScenarioSpec& spec, std::size_t gnb_index, int threads = 0);
Fim satellite_fim(const ScenarioSpec& spec, std::size_t sat_index);

std::string subset_label(const std::vector<int>& gnbs, const std::vector<int>& sats);

enum class OutputFormat { kCsv, kJson };

std::string format_csv(const std::vector<ResultRow>& rows);
std::string format_json(const std::vector<ResultRow>& rows);
/// Writes rows to `path`; IoError (and no file) when rows is empty or the write fails.
void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path);

}  // namespace hcrb

#endif  // HCRB_SCENARIO_HPP
