// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors
//
// hcrb: position/velocity error bounds for hybrid 5G + GNSS scenarios.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "hcrb/errors.hpp"
#include "hcrb/oracle.hpp"
#include "hcrb/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCompute = 2;

// Accepts "0,2,3", "0..3" and mixtures such as "0..1,3".
std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      const std::size_t dots = item.find("..");
      try {
        if (dots == std::string::npos) {
          out.push_back(std::stoi(item));
        } else {
          const int lo = std::stoi(item.substr(0, dots));
          const int hi = std::stoi(item.substr(dots + 2));
          if (hi < lo) throw std::invalid_argument("range");
          for (int i = lo; i <= hi; ++i) out.push_back(i);
        }
      } catch (const std::logic_error&) {
        throw hcrb::Error(hcrb::ErrorKind::kInvalidArgument, "bad index list '" + text + "'");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool is_validation(hcrb::ErrorKind k) {
  switch (k) {
    case hcrb::ErrorKind::kParseError:
    case hcrb::ErrorKind::kValidationError:
    case hcrb::ErrorKind::kUnknownScenario:
    case hcrb::ErrorKind::kIndexOutOfRange:
    case hcrb::ErrorKind::kInvalidArgument:
      return true;
    default:
      return false;
  }
}

struct Source {
  std::string path;
  std::string builtin;
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* s = cmd->add_option("--scenario", src.path, "Scenario JSON file");
  auto* b = cmd->add_option("--builtin", src.builtin, "Builtin scenario")
                ->check(CLI::IsMember({"A", "B", "a", "b"}));
  s->excludes(b);
  b->excludes(s);
}

hcrb::ScenarioSpec load(const Source& src) {
  if (!src.path.empty()) return hcrb::load_scenario(src.path);
  if (!src.builtin.empty()) return hcrb::builtin_scenario(src.builtin);
  throw hcrb::Error(hcrb::ErrorKind::kInvalidArgument, "one of --scenario or --builtin is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position and velocity error bounds for hybrid 5G mmWave + GNSS positioning"};
  app.require_subcommand(1);

  Source run_src;
  std::string gnbs, sats, out_path, format = "csv";
  bool sweep_all = false;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Evaluate PEB/VEB for an anchor subset or every subset");
  add_source_options(run, run_src);
  run->add_option("--gnbs", gnbs, "gNB indices, e.g. 0,1 or 0..1");
  run->add_option("--sats", sats, "satellite indices, e.g. 0..3");
  run->add_flag("--sweep-all", sweep_all, "Evaluate every non-empty anchor subset");
  run->add_option("--out", out_path, "Output file (stdout when omitted)");
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", threads, "Worker threads for the 5G FIM (0: all cores)");

  Source val_src;
  auto* validate = app.add_subcommand("validate", "Check a scenario against the schema");
  add_source_options(validate, val_src);

  std::uint64_t seed = 1;
  auto* oracle = app.add_subcommand("oracle", "Run the finite-difference cross-check suites");
  oracle->add_option("--seed", seed, "Random seed");

  std::string builtin_name, builtin_out;
  auto* builtin = app.add_subcommand("builtin", "Write a builtin scenario as JSON");
  builtin->add_option("name", builtin_name, "A or B")->required();
  builtin->add_option("--out", builtin_out, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const hcrb::ScenarioSpec spec = load(run_src);
      hcrb::SubsetSelector sel;
      sel.all_subsets = sweep_all;
      if (!sweep_all) {
        sel.gnb_indices = parse_indices(gnbs);
        sel.sat_indices = parse_indices(sats);
        if (gnbs.empty() && sats.empty()) {
          for (std::size_t i = 0; i < spec.gnbs.size(); ++i) sel.gnb_indices.push_back(static_cast<int>(i));
          for (std::size_t i = 0; i < spec.satellites.size(); ++i) sel.sat_indices.push_back(static_cast<int>(i));
        }
      }
      const auto rows = hcrb::evaluate(spec, sel, {threads});
      const auto fmt = format == "json" ? hcrb::OutputFormat::kJson : hcrb::OutputFormat::kCsv;
      if (out_path.empty()) {
        std::cout << (fmt == hcrb::OutputFormat::kJson ? hcrb::format_json(rows) : hcrb::format_csv(rows));
      } else {
        hcrb::emit(rows, fmt, out_path);
      }
      int status = kExitOk;
      for (const auto& r : rows) {
        if (!r.error.empty()) {
          std::cerr << r.subset << ": " << r.error << "\n";
          status = kExitCompute;
        }
      }
      return status;
    }
    if (*validate) {
      load(val_src).validate();
      std::cout << "ok\n";
      return kExitOk;
    }
    if (*oracle) {
      bool ok = true;
      for (const auto& r : hcrb::oracle::run_all_suites(seed)) {
        std::printf("%-4s %-66s cases=%-5d max=%.3e tol=%.1e (%.2f s)\n", r.passed() ? "PASS" : "FAIL",
                    r.name.c_str(), r.cases, r.max_deviation, r.tolerance, r.seconds);
        ok = ok && r.passed();
      }
      return ok ? kExitOk : kExitCompute;
    }
    if (*builtin) {
      const auto spec = hcrb::builtin_scenario(builtin_name);
      if (builtin_out.empty()) {
        std::cout << hcrb::scenario_to_json(spec);
      } else {
        hcrb::save_scenario(spec, builtin_out);
      }
      return kExitOk;
    }
  } catch (const hcrb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_validation(e.kind()) ? kExitValidation : kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitOk;
}
