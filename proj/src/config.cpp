// Copyright 2026 The cslab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cslab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cslab/error.hpp"

namespace cslab {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key, "malformed number for '" + key + "': '" + v + "'");
  }
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    // Allow scientific notation for counts such as 1e7.
    const double d = parse_double(key, v);
    if (d < 0 || d != static_cast<double>(static_cast<std::uint64_t>(d))) {
      throw ConfigError(key, "malformed count for '" + key + "': '" + v + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : v) {
    if (c == ',' || c == '[' || c == ']') {
      if (!trim(cur).empty()) parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) parts.push_back(trim(cur));
  return parts;
}

std::vector<std::size_t> parse_uint_list(const std::string& key, const std::string& v) {
  std::vector<std::size_t> out;
  for (const auto& p : split_list(v)) out.push_back(parse_uint(key, p));
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(key, "malformed boolean for '" + key + "': '" + v + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "master-seed", "trials",     "metric",        "alpha",          "gamma",
      "zeta",        "regime",     "m-list",        "l-list",         "n-list",
      "n-per-l",     "nu",         "power",         "beta",           "signal-kind",
      "profile",     "high-count", "high-fraction", "custom-moduli",  "decoder-policy",
      "scan-budget", "typical-cap", "fixed-matrix", "timing"};
  return keys;
}

std::string policy_name(DecodePolicy p) {
  return p == DecodePolicy::kUnique ? "unique" : "min-deviation";
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw) {
  const std::string key = trim(raw_key);
  const std::string v = trim(raw);
  if (key == "master-seed") {
    cfg.master_seed = parse_uint(key, v);
  } else if (key == "trials") {
    cfg.trials = parse_uint(key, v);
    if (cfg.trials == 0) throw ConfigError(key, "trials must be at least 1");
  } else if (key == "metric") {
    const auto m = parse_uint(key, v);
    if (m < 1 || m > 3) throw ConfigError(key, "metric must be 1, 2 or 3");
    cfg.metric = metric_from_int(static_cast<int>(m));
  } else if (key == "alpha") {
    cfg.alpha = parse_double(key, v);
  } else if (key == "gamma") {
    cfg.gamma = parse_double(key, v);
  } else if (key == "zeta") {
    if (v == "default") {
      cfg.zeta.reset();
    } else {
      cfg.zeta = parse_double(key, v);
    }
  } else if (key == "regime") {
    if (v == "linear") {
      cfg.regime = Regime::kLinear;
    } else if (v == "sublinear") {
      cfg.regime = Regime::kSublinear;
    } else {
      throw ConfigError(key, "regime must be linear or sublinear");
    }
  } else if (key == "m-list") {
    cfg.m_list = parse_uint_list(key, v);
  } else if (key == "l-list") {
    cfg.l_list = parse_uint_list(key, v);
  } else if (key == "n-list") {
    cfg.n_list = parse_uint_list(key, v);
  } else if (key == "n-per-l") {
    cfg.n_per_l = parse_uint_list(key, v);
  } else if (key == "nu") {
    cfg.nu = parse_double(key, v);
  } else if (key == "power") {
    cfg.power = parse_double(key, v);
  } else if (key == "beta") {
    if (v == "none") {
      cfg.profile.beta.reset();
    } else {
      const double b = parse_double(key, v);
      if (!(b > 2.0)) throw ConfigError(key, "beta must exceed 2");
      cfg.profile.beta = b;
    }
  } else if (key == "signal-kind") {
    if (v == "constant-power") {
      cfg.profile.kind = RegimeKind::kConstantPower;
    } else if (v == "metric1-growth") {
      cfg.profile.kind = RegimeKind::kMetric1Growth;
    } else if (v == "custom") {
      cfg.profile.kind = RegimeKind::kCustom;
    } else {
      throw ConfigError(key, "signal-kind must be constant-power, metric1-growth or custom");
    }
  } else if (key == "profile") {
    if (v == "flat") {
      cfg.profile.profile.kind = ProfileKind::kFlat;
    } else if (v == "two-level") {
      cfg.profile.profile.kind = ProfileKind::kTwoLevel;
    } else if (v == "custom") {
      cfg.profile.profile.kind = ProfileKind::kCustom;
    } else {
      throw ConfigError(key, "profile must be flat, two-level or custom");
    }
  } else if (key == "high-count") {
    cfg.profile.profile.high_count = parse_uint(key, v);
  } else if (key == "high-fraction") {
    cfg.profile.profile.high_fraction = parse_double(key, v);
  } else if (key == "custom-moduli") {
    cfg.profile.profile.custom_moduli.clear();
    for (const auto& p : split_list(v)) cfg.profile.profile.custom_moduli.push_back(parse_double(key, p));
  } else if (key == "decoder-policy") {
    if (v == "unique") {
      cfg.decoder_policy = DecodePolicy::kUnique;
    } else if (v == "min-deviation") {
      cfg.decoder_policy = DecodePolicy::kMinDeviation;
    } else {
      throw ConfigError(key, "decoder-policy must be unique or min-deviation");
    }
  } else if (key == "scan-budget") {
    cfg.scan_budget = parse_uint(key, v);
  } else if (key == "typical-cap") {
    cfg.typical_cap = parse_uint(key, v);
  } else if (key == "fixed-matrix") {
    cfg.fixed_matrix = parse_bool(key, v);
  } else if (key == "timing") {
    cfg.timing = parse_bool(key, v);
  } else {
    throw ConfigError(key, "unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      const std::string key = trim(line);
      throw ConfigError(key, "line " + std::to_string(lineno) + ": expected '" + key + " = value'");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::move(base));
}

std::pair<std::string, std::string> split_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(trim(text), "override '" + text + "' is not key=value");
  }
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

}  // namespace cslab
