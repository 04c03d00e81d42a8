#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dgansim/datasets.hpp"
#include "dgansim/gan.hpp"
#include "dgansim/net_model.hpp"

namespace dgansim {

struct SchedulerConfig {
  std::string policy = "all";  // all | round_robin | best_channel | proportional_fair
  double ratio = 1.0;
  double pf_beta = 0.1;

  bool operator==(const SchedulerConfig&) const = default;
};

struct ModelConfig {
  int noise_dim = 2;
  std::vector<int> gen_hidden = {32, 32};
  std::vector<int> disc_hidden = {32, 32};
  std::string gen_hidden_act = "tanh";
  std::string disc_hidden_act = "leaky_relu";
  double leaky_slope = 0.2;

  bool operator==(const ModelConfig&) const = default;
};

struct HyperConfig {
  int n_d = 5;
  int n_g = 5;
  double eta_d = 0.1;
  double eta_g = 0.05;
  int m_k = 128;    // device mini-batch size
  int batch_M = 128;  // server generator batch (serial and baselines)

  bool operator==(const HyperConfig&) const = default;
};

struct DataConfig {
  int num_modes = 8;
  double ring_radius = 2.0;
  double mode_std = 0.05;
  int points_per_device = 4000;

  bool operator==(const DataConfig&) const = default;
};

// Compute-time model: constant seconds per SGD step. Deliberately not part
// of NetworkConfig.
struct TimingConfig {
  double device_step_s = 0.005;
  double server_step_s = 0.005;

  bool operator==(const TimingConfig&) const = default;
};

struct RunConfig {
  std::uint64_t master_seed = 1;
  int max_rounds = 2000;
  int eval_every = 25;
  double target_metric = 0.0;  // <= 0 disables the stop criterion
  double p_fail = 0.0;
  int workers = 1;
  int eval_samples = 2000;
  double coverage_radius = 0.15;  // 3 x default mode std

  bool operator==(const RunConfig&) const = default;
};

// Full declarative description of one run.
struct ExperimentConfig {
  std::string framework = "proposed_serial";
  // proposed_parallel | proposed_serial | fedgan | centralized
  int num_devices = 10;
  SchedulerConfig scheduler;
  NetworkConfig network;
  ModelConfig model;
  HyperConfig hyper;
  DataConfig data;
  TimingConfig timing;
  RunConfig run;
  std::string output_dir = "out";

  void validate() const;  // throws std::invalid_argument with the field path
  GanSpec gan_spec() const;
  MixtureSpec mixture() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Flat `key = value` text with dotted sections; '#' starts a comment.
// Unknown keys are errors. An empty file yields all defaults.
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

// Every field in registry order; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

// Set one field by its config key (shared by the parser and `sweep --axis`).
void set_config_field(ExperimentConfig& cfg, std::string_view key,
                      std::string_view value);

// All valid config keys in registry order.
std::vector<std::string> config_field_names();

// DGAN_SEED overrides run.master_seed when set.
void apply_env_overrides(ExperimentConfig& cfg);

}  // namespace dgansim
