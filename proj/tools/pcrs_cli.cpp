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

// Command-line front end:
//   pcrs simulate [--config cfg.json] [--preset fig5a] [--out results.csv]
//                 [--seed N] [--mode avg-mu|optimize-mu] [--realizations N]
//   pcrs dump-region --L 2 [--receiver 1] [--family full|sub]

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pcrs/harness.hpp"
#include "pcrs/rate_regions.hpp"

namespace {

int run_simulate(const std::string& config_path, const std::string& preset, const std::string& out_path,
                 const std::optional<std::uint64_t>& seed, const std::string& mode,
                 const std::optional<std::size_t>& realizations, bool quiet) {
  pcrs::ExperimentConfig cfg = preset.empty() ? pcrs::ExperimentConfig{} : pcrs::figure_preset(preset);
  if (!config_path.empty()) cfg = pcrs::load_config_file(config_path, cfg);
  if (seed) cfg.seed = *seed;
  if (realizations) cfg.realizations = *realizations;
  if (mode == "avg-mu") {
    cfg.mode = pcrs::RunMode::avg_mu;
  } else if (mode == "optimize-mu") {
    cfg.mode = pcrs::RunMode::optimize_mu;
  }
  pcrs::validate(cfg);

  pcrs::ProgressFn progress;
  if (!quiet) progress = [](const std::string& msg) { std::cerr << "[pcrs] " << msg << '\n'; };
  const std::vector<pcrs::ResultRow> rows = pcrs::run_sweep(cfg, progress);

  if (out_path.empty() || out_path == "-") {
    pcrs::write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 1;
    }
    pcrs::write_csv(out, rows);
  }
  return 0;
}

int run_dump(std::size_t L, std::size_t receiver, const std::string& family) {
  if (receiver < 1 || receiver > L) {
    std::cerr << "error: --receiver must be in [1, L]\n";
    return 1;
  }
  const std::size_t l = receiver - 1;
  const std::vector<pcrs::DecodeSet> sets =
      family == "sub" ? pcrs::enumerate_rs_sub_sets(l, L) : pcrs::enumerate_rs_sets(l, L);
  for (const pcrs::DecodeSet& d : sets) {
    std::cout << "# recv=" << receiver << " Omega=" << pcrs::to_string(d.layers) << '\n';
    std::cout << pcrs::dump_region(pcrs::build_modified_mac_polytope(d), L);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-cell massive MIMO pilot-contamination rate-region simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo sweep and write the result CSV");
  std::string config_path, preset, out_path, mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations;
  bool quiet = false;
  sim->add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  sim->add_option("--preset", preset, "Figure preset used as the base configuration")
      ->check(CLI::IsMember(pcrs::preset_names()));
  sim->add_option("--out", out_path, "Output CSV path (default: stdout)");
  sim->add_option("--seed", seed, "Base random seed");
  sim->add_option("--mode", mode, "RS power-split mode")->check(CLI::IsMember({"avg-mu", "optimize-mu"}));
  sim->add_option("--realizations", realizations, "Number of user-drop realizations");
  sim->add_flag("--quiet", quiet, "Suppress progress messages");

  auto* dump = app.add_subcommand("dump-region", "Print modified MAC constraint lists");
  std::size_t L = 2;
  std::size_t receiver = 1;
  std::string family = "full";
  dump->add_option("--L", L, "Number of cells")->check(CLI::Range(2, 16));
  dump->add_option("--receiver", receiver, "Receiver cell (1-based)");
  dump->add_option("--family", family, "Decode-set family")->check(CLI::IsMember({"full", "sub"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return run_simulate(config_path, preset, out_path, seed, mode, realizations, quiet);
    if (*dump) return run_dump(L, receiver, family);
  } catch (const pcrs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
