// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcrs/harness.hpp"

namespace pcrs {

namespace {

using nlohmann::json;

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(key, "expected a nonnegative integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) throw ConfigError(key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

// A scalar or an array of scalars.
template <class T, class Get>
std::vector<T> get_list(const json& v, const std::string& key, Get get) {
  std::vector<T> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(static_cast<T>(get(v[i], key + "[" + std::to_string(i) + "]")));
    }
  } else {
    out.push_back(static_cast<T>(get(v, key)));
  }
  return out;
}

}  // namespace

std::string_view run_mode_name(RunMode m) { return m == RunMode::avg_mu ? "avg-mu" : "optimize-mu"; }

void validate(const ExperimentConfig& c) {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(field, what);
  };
  require(c.num_cells >= 1 && c.num_cells <= kMaxCells, "L", "must be in [1, 16]");
  require(!c.users_per_cell.empty(), "K", "must not be empty");
  for (std::size_t K : c.users_per_cell) require(K >= 1, "K", "must be positive");
  require(c.cell_radius > 0.0, "cell_radius", "must be positive");
  require(c.min_bs_distance >= 0.0 && c.min_bs_distance < c.cell_radius, "min_bs_distance",
          "must be in [0, cell_radius)");
  require(c.bs_power_watts > 0.0, "bs_power_watts", "must be positive");
  require(std::isfinite(c.noise_dbm), "noise_dbm", "must be finite");
  require(c.fc_ghz > 0.0, "fc_ghz", "must be positive");
  require(c.bs_height > 0.0, "bs_height", "must be positive");
  require(c.user_height > 0.0, "user_height", "must be positive");
  require(!c.kappa.empty(), "kappa", "must not be empty");
  for (double k : c.kappa) require(k >= 0.0 && k <= 1.0, "kappa", "must be in [0, 1]");
  require(!c.sigma_shadow.empty(), "sigma_shadow", "must not be empty");
  for (double s : c.sigma_shadow) require(s >= 0.0 && std::isfinite(s), "sigma_shadow", "must be nonnegative");
  require(c.uplink_power_watts > 0.0, "uplink_power_watts", "must be positive");
  if (c.rho_p) require(*c.rho_p > 0.0 && std::isfinite(*c.rho_p), "rho_p", "must be positive");
  require(!c.antennas.empty(), "M", "must not be empty");
  for (std::uint64_t M : c.antennas) {
    for (std::size_t K : c.users_per_cell) {
      require(M > K, "M", "every antenna count must exceed every K");
    }
  }
  require(c.mu_step > 0.0 && c.mu_step <= 1.0, "mu_step", "must be in (0, 1]");
  require(!c.schemes.empty(), "schemes", "must not be empty");
  require(c.mc_channel_samples >= 1, "mc_channel_samples", "must be at least 1");
  if (c.precoder.kind == PrecoderKind::rzf) require(c.precoder.delta >= 0.0, "rzf_delta", "must be nonnegative");
  const bool rs = std::find(c.schemes.begin(), c.schemes.end(), Scheme::rs) != c.schemes.end();
  if (rs) require(c.num_cells >= 2, "schemes", "RS needs at least two cells");
  if (rs && c.mode == RunMode::avg_mu) {
    require(c.training_realizations >= 1, "training_realizations", "avg-mu mode needs training realizations");
  }
}

ExperimentConfig parse_config_json(std::string_view text, const ExperimentConfig& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");

  ExperimentConfig c = base;
  for (const auto& [key, v] : doc.items()) {
    if (key == "L") {
      c.num_cells = get_count(v, key);
    } else if (key == "K") {
      c.users_per_cell = get_list<std::size_t>(v, key, get_count);
    } else if (key == "cell_radius") {
      c.cell_radius = get_number(v, key);
    } else if (key == "min_bs_distance") {
      c.min_bs_distance = get_number(v, key);
    } else if (key == "bs_power_watts") {
      c.bs_power_watts = get_number(v, key);
    } else if (key == "power_is_per_user") {
      c.power_is_per_user = get_bool(v, key);
    } else if (key == "noise_dbm") {
      c.noise_dbm = get_number(v, key);
    } else if (key == "fc_ghz") {
      c.fc_ghz = get_number(v, key);
    } else if (key == "bs_height") {
      c.bs_height = get_number(v, key);
    } else if (key == "user_height") {
      c.user_height = get_number(v, key);
    } else if (key == "correlation") {
      const std::string s = get_string(v, key);
      if (s == "exponential") {
        c.correlation = CorrelationKind::exponential;
      } else if (s == "uncorrelated") {
        c.correlation = CorrelationKind::uncorrelated;
      } else {
        throw ConfigError(key, "expected \"exponential\" or \"uncorrelated\"");
      }
    } else if (key == "kappa") {
      c.kappa = get_list<double>(v, key, get_number);
    } else if (key == "sigma_shadow") {
      c.sigma_shadow = get_list<double>(v, key, get_number);
    } else if (key == "uplink_power_watts") {
      c.uplink_power_watts = get_number(v, key);
    } else if (key == "rho_p") {
      if (v.is_null()) {
        c.rho_p.reset();
      } else {
        c.rho_p = get_number(v, key);
      }
    } else if (key == "M") {
      c.antennas = get_list<std::uint64_t>(v, key, get_count);
    } else if (key == "realizations") {
      c.realizations = get_count(v, key);
    } else if (key == "training_realizations") {
      c.training_realizations = get_count(v, key);
    } else if (key == "mu_step") {
      c.mu_step = get_number(v, key);
    } else if (key == "schemes") {
      if (!v.is_array()) throw ConfigError(key, "expected an array of scheme names");
      c.schemes.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string field = key + "[" + std::to_string(i) + "]";
        try {
          c.schemes.push_back(parse_scheme(get_string(v[i], field)));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(field, e.what());
        }
      }
    } else if (key == "seed") {
      c.seed = get_count(v, key);
    } else if (key == "mode") {
      const std::string s = get_string(v, key);
      if (s == "avg-mu") {
        c.mode = RunMode::avg_mu;
      } else if (s == "optimize-mu") {
        c.mode = RunMode::optimize_mu;
      } else {
        throw ConfigError(key, "expected \"avg-mu\" or \"optimize-mu\"");
      }
    } else if (key == "mc_channel_samples") {
      c.mc_channel_samples = get_count(v, key);
    } else if (key == "precoder") {
      const std::string s = get_string(v, key);
      if (s == "zf") {
        c.precoder.kind = PrecoderKind::zf;
      } else if (s == "rzf") {
        c.precoder.kind = PrecoderKind::rzf;
      } else {
        throw ConfigError(key, "expected \"zf\" or \"rzf\"");
      }
    } else if (key == "rzf_delta") {
      c.precoder.delta = get_number(v, key);
    } else if (key == "ic_mode") {
      const std::string s = get_string(v, key);
      if (s == "all") {
        c.ic_mode = IcMode::all;
      } else if (s == "representative") {
        c.ic_mode = IcMode::representative;
      } else {
        throw ConfigError(key, "expected \"all\" or \"representative\"");
      }
    } else if (key == "rs_family") {
      const std::string s = get_string(v, key);
      if (s == "sub") {
        c.rs_family = RsFamilyKind::sub;
      } else if (s == "full") {
        c.rs_family = RsFamilyKind::full;
      } else {
        throw ConfigError(key, "expected \"sub\" or \"full\"");
      }
    } else if (key == "parallel") {
      c.parallel = get_bool(v, key);
    } else {
      throw ConfigError(key, "unknown configuration key");
    }
  }
  validate(c);
  return c;
}

ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str(), base);
}

}  // namespace pcrs
