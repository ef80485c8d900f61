// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <algorithm>
#include <chrono>
#include <optional>
#include <tuple>

#include "hcrb/errors.hpp"
#include "hcrb/scenario.hpp"

namespace hcrb {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CachedGnb {
  std::optional<GnbTerm> term;
  std::string error;
  double seconds = 0.0;
};

struct CachedSat {
  std::optional<SatTerm> term;
  std::string error;
  double seconds = 0.0;
};

struct Subset {
  std::vector<int> gnbs;
  std::vector<int> sats;
};

std::vector<Subset> enumerate(const ScenarioSpec& spec, const SubsetSelector& sel) {
  const int G = static_cast<int>(spec.gnbs.size());
  const int S = static_cast<int>(spec.satellites.size());
  std::vector<Subset> out;
  if (sel.all_subsets) {
    const int n = G + S;
    if (n > 20) throw Error(ErrorKind::kInvalidArgument, "too many anchors for an exhaustive sweep");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Subset s;
      for (int i = 0; i < G; ++i) {
        if (mask & (1u << i)) s.gnbs.push_back(i);
      }
      for (int i = 0; i < S; ++i) {
        if (mask & (1u << (G + i))) s.sats.push_back(i);
      }
      out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
      if (a.gnbs.size() != b.gnbs.size()) return a.gnbs.size() < b.gnbs.size();
      if (a.sats.size() != b.sats.size()) return a.sats.size() < b.sats.size();
      return std::tie(a.gnbs, a.sats) < std::tie(b.gnbs, b.sats);
    });
    return out;
  }
  Subset s{sel.gnb_indices, sel.sat_indices};
  std::sort(s.gnbs.begin(), s.gnbs.end());
  s.gnbs.erase(std::unique(s.gnbs.begin(), s.gnbs.end()), s.gnbs.end());
  std::sort(s.sats.begin(), s.sats.end());
  s.sats.erase(std::unique(s.sats.begin(), s.sats.end()), s.sats.end());
  for (int i : s.gnbs) {
    if (i < 0 || i >= G) throw Error(ErrorKind::kIndexOutOfRange, "gNB index " + std::to_string(i));
  }
  for (int i : s.sats) {
    if (i < 0 || i >= S) {
      throw Error(ErrorKind::kIndexOutOfRange, "satellite index " + std::to_string(i));
    }
  }
  if (s.gnbs.empty() && s.sats.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "anchor subset is empty");
  }
  out.push_back(std::move(s));
  return out;
}

AnchorContribution contribution(const std::string& name, const Matrix7d& J) {
  return {name, J.block<3, 3>(0, 0).trace(), J.block<3, 3>(3, 3).trace()};
}

}  // namespace

std::string subset_label(const std::vector<int>& gnbs, const std::vector<int>& sats) {
  std::string out;
  for (int g : gnbs) out += (out.empty() ? "g" : "+g") + std::to_string(g);
  for (int s : sats) out += (out.empty() ? "s" : "+s") + std::to_string(s);
  return out;
}

Fim gnb_fim(const ScenarioSpec& spec, std::size_t gnb_index, int threads) {
  if (gnb_index >= spec.gnbs.size()) {
    throw Error(ErrorKind::kIndexOutOfRange, "gNB index " + std::to_string(gnb_index));
  }
  const GnbSpec& g = spec.gnbs[gnb_index];
  const PlatformState& av = spec.vehicle.state;
  const AntennaArray tx = g.array.build();
  const AntennaArray rx = spec.vehicle.array.build();
  const BeamformingConfig beams = build_codebook(g.ofdm, tx, rx, g.sector, av.phi0);
  const PilotSet pilots = generate_pilots(g.ofdm, g.pilot_seed);
  const Power5GConfig power{g.pn0_dbhz, static_cast<int>(tx.size()), static_cast<int>(rx.size())};
  const Link5G link{g.ofdm, beams, pilots, tx, rx, power};
  return fim_5g_closed(link, observe_gnb(av, g.anchor), threads);
}

Fim satellite_fim(const ScenarioSpec& spec, std::size_t sat_index) {
  if (sat_index >= spec.satellites.size()) {
    throw Error(ErrorKind::kIndexOutOfRange, "satellite index " + std::to_string(sat_index));
  }
  return fim_gnss(spec.satellites[sat_index].signal);
}

std::vector<ResultRow> evaluate(const ScenarioSpec& spec, const SubsetSelector& selector,
                                const EvaluateOptions& opts) {
  spec.validate();
  const std::vector<Subset> subsets = enumerate(spec, selector);
  const PlatformState& av = spec.vehicle.state;

  std::vector<std::optional<CachedGnb>> gnb_cache(spec.gnbs.size());
  std::vector<std::optional<CachedSat>> sat_cache(spec.satellites.size());
  auto gnb_term = [&](int i) -> const CachedGnb& {
    auto& slot = gnb_cache[static_cast<std::size_t>(i)];
    if (!slot) {
      CachedGnb c;
      const auto t0 = Clock::now();
      try {
        c.term = GnbTerm{transform_g(av, spec.gnbs[static_cast<std::size_t>(i)].anchor),
                         gnb_fim(spec, static_cast<std::size_t>(i), opts.threads)};
      } catch (const std::exception& e) {
        c.error = e.what();
      }
      c.seconds = seconds_since(t0);
      slot = std::move(c);
    }
    return *slot;
  };
  auto sat_term = [&](int i) -> const CachedSat& {
    auto& slot = sat_cache[static_cast<std::size_t>(i)];
    if (!slot) {
      CachedSat c;
      const auto t0 = Clock::now();
      try {
        c.term = SatTerm{transform_s(av, spec.satellites[static_cast<std::size_t>(i)].anchor),
                         satellite_fim(spec, static_cast<std::size_t>(i))};
      } catch (const std::exception& e) {
        c.error = e.what();
      }
      c.seconds = seconds_since(t0);
      slot = std::move(c);
    }
    return *slot;
  };

  for (const Subset& s : subsets) {
    for (int i : s.gnbs) gnb_term(i);
    for (int i : s.sats) sat_term(i);
  }

  std::vector<ResultRow> rows;
  rows.reserve(subsets.size());
  for (const Subset& s : subsets) {
    ResultRow row;
    row.scenario = spec.name;
    row.gnb_count = static_cast<int>(s.gnbs.size());
    row.sat_count = static_cast<int>(s.sats.size());
    row.subset = subset_label(s.gnbs, s.sats);

    // Wall clock also charges the (cached) FIMs of this subset's anchors.
    const auto t0 = Clock::now();
    double anchor_seconds = 0.0;
    std::vector<GnbTerm> gterms;
    std::vector<SatTerm> sterms;
    for (int i : s.gnbs) {
      const CachedGnb& c = gnb_term(i);
      anchor_seconds += c.seconds;
      if (!c.term) {
        row.error = "g" + std::to_string(i) + ": " + c.error;
        break;
      }
      gterms.push_back(*c.term);
      row.contributions.push_back(contribution(
          "g" + std::to_string(i), assemble_total_fim({*c.term}, {})));
    }
    for (int i : s.sats) {
      if (!row.error.empty()) break;
      const CachedSat& c = sat_term(i);
      anchor_seconds += c.seconds;
      if (!c.term) {
        row.error = "s" + std::to_string(i) + ": " + c.error;
        break;
      }
      sterms.push_back(*c.term);
      row.contributions.push_back(contribution(
          "s" + std::to_string(i), assemble_total_fim({}, {*c.term})));
    }
    if (row.error.empty()) {
      try {
        const BoundReport rep = compute_bounds(assemble_total_fim(gterms, sterms));
        row.peb_m = rep.peb;
        row.veb_mps = rep.veb;
        row.feasible = rep.feasible;
        row.rank = rep.rank;
        row.condition_number = rep.condition_number;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
    row.wallclock_s = seconds_since(t0) + anchor_seconds;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hcrb
