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

#ifndef PCRS_HARNESS_HPP
#define PCRS_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcrs/channel.hpp"
#include "pcrs/link_bounds.hpp"
#include "pcrs/symrate.hpp"

namespace pcrs {

enum class RunMode { optimize_mu, avg_mu };
// Which pilot-sharing interference channels are evaluated per realization.
// `representative` evaluates only the IC of pilot 0 in each drop.
enum class IcMode { all, representative };

std::string_view run_mode_name(RunMode m);

struct ExperimentConfig {
  std::size_t num_cells = 7;
  std::vector<std::size_t> users_per_cell{15};
  double cell_radius = 400.0;
  double min_bs_distance = 35.0;
  double bs_power_watts = 40.0;
  bool power_is_per_user = false;
  double noise_dbm = -101.0;
  double fc_ghz = 3.5;
  double bs_height = 25.0;
  double user_height = 1.5;
  CorrelationKind correlation = CorrelationKind::exponential;
  std::vector<double> kappa{0.4};
  std::vector<double> sigma_shadow{0.0};
  // Pilot SNR: rho_p = K * uplink_power / noise unless given directly.
  double uplink_power_watts = 0.2;
  std::optional<double> rho_p;
  std::vector<std::uint64_t> antennas{32, 64, 128, 256, 512, 1024};
  std::size_t realizations = 30;
  std::size_t training_realizations = 10;
  double mu_step = 0.02;
  std::vector<Scheme> schemes{Scheme::tin, Scheme::sd, Scheme::snd, Scheme::rs};
  std::uint64_t seed = 1;
  RunMode mode = RunMode::avg_mu;
  std::size_t mc_channel_samples = 500;
  PrecoderSpec precoder;
  IcMode ic_mode = IcMode::all;
  RsFamilyKind rs_family = RsFamilyKind::sub;
  bool parallel = true;
};

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

/// Parses a JSON object holding any subset of the config fields on top of
/// `base`. Unknown keys and ill-typed values raise ConfigError.
ExperimentConfig parse_config_json(std::string_view json, const ExperimentConfig& base = {});
ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base = {});

/// Per-user transmit SNR: (P / K) / sigma^2 with sigma^2 = 10^((dBm - 30) / 10)
/// watts, or P / sigma^2 when `per_user` is set.
double rho_from_power(double bs_power_watts, std::size_t K, double noise_dbm, bool per_user = false);

/// Pilot SNR for a K-symbol pilot: K * uplink_power / sigma^2.
double rho_p_from_power(double uplink_power_watts, std::size_t K, double noise_dbm);

/// Throws std::invalid_argument for an unknown name.
ExperimentConfig figure_preset(std::string_view name);
std::vector<std::string> preset_names();

struct ResultRow {
  std::string scheme;
  std::uint64_t M = 0;
  double kappa = 0.0;
  std::size_t K = 0;
  double sigma_shadow = 0.0;
  double mean_sym_se = 0.0;
  double stderr_se = 0.0;
  std::size_t n_realizations = 0;
  std::string mode;
  double avg_mu = 0.0;  // NaN when not applicable

  bool operator==(const ResultRow& o) const;
};

// One sweep point and the per-realization symmetric SE of every scheme.
struct PointSamples {
  std::uint64_t M = 0;
  double kappa = 0.0;
  std::size_t K = 0;
  double sigma_shadow = 0.0;
  double avg_mu = 0.0;  // NaN unless avg-mu RS
  std::vector<std::vector<double>> per_scheme;  // [scheme][realization]
};

using ProgressFn = std::function<void(const std::string&)>;

/// Runs every sweep point and returns the raw per-realization values.
std::vector<PointSamples> run_sweep_samples(const ExperimentConfig& cfg, const ProgressFn& progress = {});

/// Aggregates run_sweep_samples into one row per (point, scheme).
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, const ProgressFn& progress = {});

/// Symmetric SE of every configured scheme for one realization (mean over
/// the evaluated pilot ICs). `avg_mu` is used for RS in avg-mu mode. When
/// `winning_mu` is non-null it receives the mean winning power split.
std::vector<double> evaluate_realization(const ExperimentConfig& cfg, std::size_t K, double kappa, double sigma,
                                         std::uint64_t M, std::uint64_t stream, std::size_t realization,
                                         double avg_mu, double* winning_mu = nullptr, bool parallel = false);

inline constexpr std::string_view kCsvHeader =
    "scheme,M,kappa,K,sigma_shadow,mean_sym_se,stderr,n_realizations,mode,avg_mu";

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::string to_csv(const std::vector<ResultRow>& rows);
/// Throws std::invalid_argument on a malformed table.
std::vector<ResultRow> parse_csv(std::string_view text);

}  // namespace pcrs

#endif  // PCRS_HARNESS_HPP
