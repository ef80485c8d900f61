// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "hcrb/errors.hpp"
#include "hcrb/scenario.hpp"

namespace hcrb {

namespace {

using json = nlohmann::ordered_json;

// ---- reading -------------------------------------------------------------

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kParseError, path + ": " + what);
}

[[noreturn]] void missing(const std::string& path) {
  throw Error(ErrorKind::kValidationError, "missing required field " + path);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) parse_error(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) parse_error(child(path, key), "unknown key '" + key + "'");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (v == nullptr) missing(child(path, key));
  return *v;
}

double get_double(const json& v, const std::string& path) {
  if (!v.is_number()) parse_error(path, "expected a number");
  return v.get<double>();
}

double req_double(const json& j, const std::string& path, const char* key) {
  return get_double(require(j, path, key), child(path, key));
}

double opt_double(const json& j, const std::string& path, const char* key, double fallback) {
  const json* v = find(j, key);
  return v ? get_double(*v, child(path, key)) : fallback;
}

long long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) parse_error(path, "expected an integer");
  return v.get<long long>();
}

long long req_int(const json& j, const std::string& path, const char* key) {
  return get_int(require(j, path, key), child(path, key));
}

std::uint64_t get_seed(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) parse_error(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) parse_error(path, "expected a string");
  return v.get<std::string>();
}

Vec3 get_vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) parse_error(path, "expected an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) out(i) = get_double(v[static_cast<std::size_t>(i)], path + "/" + std::to_string(i));
  return out;
}

Boresight parse_boresight(const std::string& s, const std::string& path) {
  if (s == "+x") return Boresight::kPlusX;
  if (s == "+y") return Boresight::kPlusY;
  if (s == "+z") return Boresight::kPlusZ;
  parse_error(path, "boresight must be one of +x, +y, +z");
}

const char* boresight_name(Boresight b) {
  switch (b) {
    case Boresight::kPlusX: return "+x";
    case Boresight::kPlusY: return "+y";
    case Boresight::kPlusZ: return "+z";
  }
  return "+z";
}

ArraySpec read_array(const json& j, const std::string& path) {
  expect_object(j, path, {"nx", "ny", "boresight"});
  ArraySpec a;
  a.nx = static_cast<int>(req_int(j, path, "nx"));
  a.ny = static_cast<int>(req_int(j, path, "ny"));
  a.boresight = parse_boresight(get_string(require(j, path, "boresight"), child(path, "boresight")),
                                child(path, "boresight"));
  return a;
}

VehicleSpec read_vehicle(const json& j, const std::string& path) {
  expect_object(j, path, {"position_m", "velocity_mps", "phi0_rad", "clock_bias_s", "array"});
  VehicleSpec v;
  v.state.p = get_vec3(require(j, path, "position_m"), child(path, "position_m"));
  v.state.v = get_vec3(require(j, path, "velocity_mps"), child(path, "velocity_mps"));
  v.state.phi0 = opt_double(j, path, "phi0_rad", 0.0);
  v.state.clock_bias = opt_double(j, path, "clock_bias_s", 0.0);
  if (const json* a = find(j, "array")) v.array = read_array(*a, child(path, "array"));
  return v;
}

GnbSpec read_gnb(const json& j, const std::string& path) {
  expect_object(j, path, {"position_m", "velocity_mps", "carrier_freq_hz", "array", "pn0_dbhz",
                          "ofdm", "codebook", "pilot_seed"});
  GnbSpec g;
  g.anchor.kind = AnchorKind::kGnb;
  g.anchor.p = get_vec3(require(j, path, "position_m"), child(path, "position_m"));
  if (const json* v = find(j, "velocity_mps")) g.anchor.v = get_vec3(*v, child(path, "velocity_mps"));
  g.anchor.carrier_freq_hz = req_double(j, path, "carrier_freq_hz");
  g.array = read_array(require(j, path, "array"), child(path, "array"));
  g.pn0_dbhz = req_double(j, path, "pn0_dbhz");

  const std::string op = child(path, "ofdm");
  const json& o = require(j, path, "ofdm");
  expect_object(o, op, {"subcarriers", "symbols", "subcarrier_spacing_hz", "symbol_duration_s",
                        "ici_halfwidth", "ici_time_scaling"});
  g.ofdm.K = static_cast<int>(req_int(o, op, "subcarriers"));
  g.ofdm.M = static_cast<int>(req_int(o, op, "symbols"));
  g.ofdm.delta_f = req_double(o, op, "subcarrier_spacing_hz");
  g.ofdm.T0 = req_double(o, op, "symbol_duration_s");
  g.ofdm.f_c = g.anchor.carrier_freq_hz;
  if (const json* h = find(o, "ici_halfwidth")) {
    g.ofdm.ici_halfwidth = static_cast<int>(get_int(*h, child(op, "ici_halfwidth")));
  }
  if (const json* s = find(o, "ici_time_scaling")) {
    const std::string sp = child(op, "ici_time_scaling");
    const std::string v = get_string(*s, sp);
    if (v == "symbol_fraction") {
      g.ofdm.ici_scaling = IciScaling::kSymbolFraction;
    } else if (v == "sample_index") {
      g.ofdm.ici_scaling = IciScaling::kSampleIndex;
    } else {
      parse_error(sp, "expected 'symbol_fraction' or 'sample_index'");
    }
  }

  const std::string cp = child(path, "codebook");
  const json& c = require(j, path, "codebook");
  expect_object(c, cp, {"beams", "streams", "center_azimuth_rad", "span_rad", "polar_rad"});
  g.ofdm.N_b = static_cast<int>(req_int(c, cp, "beams"));
  g.ofdm.N_s = static_cast<int>(req_int(c, cp, "streams"));
  g.sector.center_azimuth = req_double(c, cp, "center_azimuth_rad");
  g.sector.span = req_double(c, cp, "span_rad");
  g.sector.polar = req_double(c, cp, "polar_rad");

  g.pilot_seed = get_seed(require(j, path, "pilot_seed"), child(path, "pilot_seed"));
  return g;
}

SatelliteSpec read_satellite(const json& j, const std::string& path) {
  expect_object(j, path, {"position_m", "velocity_mps", "carrier_freq_hz", "signal"});
  SatelliteSpec s;
  s.anchor.kind = AnchorKind::kSatellite;
  s.anchor.p = get_vec3(require(j, path, "position_m"), child(path, "position_m"));
  s.anchor.v = get_vec3(require(j, path, "velocity_mps"), child(path, "velocity_mps"));
  s.anchor.carrier_freq_hz = req_double(j, path, "carrier_freq_hz");

  const std::string sp = child(path, "signal");
  const json& g = require(j, path, "signal");
  expect_object(g, sp, {"cn0_dbhz", "observation_time_s", "bandwidth_hz", "chip_duration_s",
                        "chips", "pulse", "pulse_samples"});
  s.signal.cn0_dbhz = req_double(g, sp, "cn0_dbhz");
  s.signal.T_so = req_double(g, sp, "observation_time_s");
  s.signal.W = req_double(g, sp, "bandwidth_hz");
  s.signal.T_c = req_double(g, sp, "chip_duration_s");
  s.signal.N_so = req_int(g, sp, "chips");
  const std::string pulse = get_string(require(g, sp, "pulse"), child(sp, "pulse"));
  if (pulse == "rectangular") {
    s.signal.pulse = PulseShape::kRectangular;
  } else if (pulse == "sampled") {
    s.signal.pulse = PulseShape::kSampled;
  } else {
    parse_error(child(sp, "pulse"), "expected 'rectangular' or 'sampled'");
  }
  if (const json* ps = find(g, "pulse_samples")) {
    const std::string pp = child(sp, "pulse_samples");
    if (!ps->is_array()) parse_error(pp, "expected an array of numbers");
    for (std::size_t i = 0; i < ps->size(); ++i) {
      s.signal.samples.push_back(get_double((*ps)[i], pp + "/" + std::to_string(i)));
    }
  }
  if (s.signal.pulse == PulseShape::kSampled && s.signal.samples.empty()) {
    missing(child(sp, "pulse_samples"));
  }
  return s;
}

ScenarioSpec read_scenario(const json& j) {
  const std::string root;
  expect_object(j, "/", {"name", "description", "vehicle", "gnbs", "satellites",
                         "satellite_velocity_seed"});
  ScenarioSpec spec;
  spec.name = get_string(require(j, root, "name"), "/name");
  if (const json* d = find(j, "description")) spec.description = get_string(*d, "/description");
  spec.vehicle = read_vehicle(require(j, root, "vehicle"), "/vehicle");
  if (const json* g = find(j, "gnbs")) {
    if (!g->is_array()) parse_error("/gnbs", "expected an array");
    for (std::size_t i = 0; i < g->size(); ++i) {
      spec.gnbs.push_back(read_gnb((*g)[i], "/gnbs/" + std::to_string(i)));
    }
  }
  if (const json* s = find(j, "satellites")) {
    if (!s->is_array()) parse_error("/satellites", "expected an array");
    for (std::size_t i = 0; i < s->size(); ++i) {
      spec.satellites.push_back(read_satellite((*s)[i], "/satellites/" + std::to_string(i)));
    }
  }
  if (const json* seed = find(j, "satellite_velocity_seed")) {
    spec.satellite_velocity_seed = get_seed(*seed, "/satellite_velocity_seed");
  }
  return spec;
}

// ---- writing -------------------------------------------------------------

json vec3(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json array_json(const ArraySpec& a) {
  return {{"nx", a.nx}, {"ny", a.ny}, {"boresight", boresight_name(a.boresight)}};
}

json write_scenario(const ScenarioSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["description"] = spec.description;
  const PlatformState& av = spec.vehicle.state;
  j["vehicle"] = {{"position_m", vec3(av.p)},
                  {"velocity_mps", vec3(av.v)},
                  {"phi0_rad", av.phi0},
                  {"clock_bias_s", av.clock_bias},
                  {"array", array_json(spec.vehicle.array)}};
  j["gnbs"] = json::array();
  for (const GnbSpec& g : spec.gnbs) {
    json o = {{"subcarriers", g.ofdm.K},
              {"symbols", g.ofdm.M},
              {"subcarrier_spacing_hz", g.ofdm.delta_f},
              {"symbol_duration_s", g.ofdm.T0},
              {"ici_halfwidth", g.ofdm.ici_halfwidth},
              {"ici_time_scaling", g.ofdm.ici_scaling == IciScaling::kSymbolFraction
                                       ? "symbol_fraction"
                                       : "sample_index"}};
    json c = {{"beams", g.ofdm.N_b},
              {"streams", g.ofdm.N_s},
              {"center_azimuth_rad", g.sector.center_azimuth},
              {"span_rad", g.sector.span},
              {"polar_rad", g.sector.polar}};
    j["gnbs"].push_back({{"position_m", vec3(g.anchor.p)},
                         {"velocity_mps", vec3(g.anchor.v)},
                         {"carrier_freq_hz", g.anchor.carrier_freq_hz},
                         {"array", array_json(g.array)},
                         {"pn0_dbhz", g.pn0_dbhz},
                         {"ofdm", o},
                         {"codebook", c},
                         {"pilot_seed", g.pilot_seed}});
  }
  j["satellites"] = json::array();
  for (const SatelliteSpec& s : spec.satellites) {
    json sig = {{"cn0_dbhz", s.signal.cn0_dbhz},
                {"observation_time_s", s.signal.T_so},
                {"bandwidth_hz", s.signal.W},
                {"chip_duration_s", s.signal.T_c},
                {"chips", s.signal.N_so},
                {"pulse", s.signal.pulse == PulseShape::kRectangular ? "rectangular" : "sampled"},
                {"pulse_samples", s.signal.samples}};
    j["satellites"].push_back({{"position_m", vec3(s.anchor.p)},
                               {"velocity_mps", vec3(s.anchor.v)},
                               {"carrier_freq_hz", s.anchor.carrier_freq_hz},
                               {"signal", sig}});
  }
  if (spec.satellite_velocity_seed) j["satellite_velocity_seed"] = *spec.satellite_velocity_seed;
  return j;
}

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// ---- results -------------------------------------------------------------

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string scenario_to_json(const ScenarioSpec& spec) { return write_scenario(spec).dump(2) + "\n"; }

ScenarioSpec scenario_from_json(std::string_view text, std::string_view source) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParseError,
                std::string(source) + ": malformed JSON at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  ScenarioSpec spec = read_scenario(j);
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str(), path);
}

void save_scenario(const ScenarioSpec& spec, const std::string& path) {
  spec.validate();
  const std::string text = scenario_to_json(spec);
  std::ofstream out(path);
  if (!out || !(out << text)) throw Error(ErrorKind::kIoError, "cannot write " + path);
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = "scenario,gnb_count,sat_count,subset,peb_m,veb_mps,feasible,rank,cond,wallclock_s\n";
  for (const ResultRow& r : rows) {
    out += csv_field(r.scenario) + ',' + std::to_string(r.gnb_count) + ',' +
           std::to_string(r.sat_count) + ',' + csv_field(r.subset) + ',' +
           (r.peb_m ? g6(*r.peb_m) : "") + ',' + (r.veb_mps ? g6(*r.veb_mps) : "") + ',' +
           (r.feasible ? "true" : "false") + ',' + std::to_string(r.rank) + ',' +
           g6(r.condition_number) + ',' + g6(r.wallclock_s) + '\n';
  }
  return out;
}

std::string format_json(const std::vector<ResultRow>& rows) {
  json arr = json::array();
  for (const ResultRow& r : rows) {
    arr.push_back({{"scenario", r.scenario},
                   {"gnb_count", r.gnb_count},
                   {"sat_count", r.sat_count},
                   {"subset", r.subset},
                   {"peb_m", optional_number(r.peb_m)},
                   {"veb_mps", optional_number(r.veb_mps)},
                   {"feasible", r.feasible},
                   {"rank", r.rank},
                   {"condition_number", r.condition_number},
                   {"wallclock_s", r.wallclock_s},
                   {"error", r.error.empty() ? json(nullptr) : json(r.error)}});
  }
  return arr.dump(2) + "\n";
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path) {
  if (rows.empty()) throw Error(ErrorKind::kIoError, "no result rows to write");
  const std::string text = format == OutputFormat::kCsv ? format_csv(rows) : format_json(rows);
  std::ofstream out(path);
  if (!out || !(out << text) || !out.flush()) throw Error(ErrorKind::kIoError, "cannot write " + path);
}

}  // namespace hcrb
