#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dgansim/config.hpp"
#include "dgansim/datasets.hpp"
#include "dgansim/gan.hpp"
#include "dgansim/metrics.hpp"
#include "dgansim/net_model.hpp"
#include "dgansim/scheduler.hpp"

namespace dgansim {

struct DeviceState {
  int device_id = 0;
  DeviceShard shard;
  ParamVec phi_local;   // working discriminator copy
  ParamVec theta_view;  // latest broadcast generator
  std::uint64_t noise_key = 0;
  std::uint64_t noise_offset = 0;
  std::uint64_t data_key = 0;
  std::uint64_t data_offset = 0;
  int batch_size = 0;  // m_k
  double compute_s_per_step = 0.0;
  bool failed_this_round = false;
};

struct ServerState {
  ParamVec theta;       // global generator
  ParamVec phi_global;  // global discriminator
  int generator_batch_M = 0;
  int n_g = 0;
  int n_d = 0;
  double eta_g = 0.0;
  double eta_d = 0.0;
  int round_index = 0;
  std::uint64_t noise_key = 0;  // server noise stream (serial + baselines)
  std::uint64_t noise_offset = 0;
};

struct PhaseDurations {
  double device_compute = 0.0;  // slowest scheduled device's compute
  double uplink = 0.0;  // tail from that until the last upload lands
  double averaging = 0.0;
  double server_compute = 0.0;
  double broadcast_phi = 0.0;
  double broadcast_theta = 0.0;
};

struct RoundLog {
  int round_index = 0;
  ScheduleDecision schedule;
  std::vector<int> excluded_devices;
  PhaseDurations phases;
  double round_duration_s = 0.0;
  double cumulative_sim_time_s = 0.0;
  std::uint64_t uplink_bits = 0;
  std::uint64_t downlink_bits = 0;
  std::optional<double> metric_value;
  bool aborted = false;  // every scheduled device failed
};

// ---------------------------------------------------------------------------
// Message enumeration. This is the complete set of payloads that ever travels
// between device and server states; raw data (DataBatch / DeviceShard) has no
// alternative here, which is the structural privacy guarantee.

struct ScheduleSignal {
  int round = 0;
  int device_id = 0;
  double share = 0.0;
};

struct SeedAnnouncement {
  int device_id = 0;
  std::uint64_t noise_key = 0;
  std::uint64_t noise_offset = 0;
  int batch_size = 0;  // m_k
};

struct DiscriminatorUpload {
  int device_id = 0;
  ParamVec phi;
  int sample_count = 0;  // m_k, the averaging weight
};

// FedGAN baseline: devices upload their whole local GAN.
struct FedGanUpload {
  int device_id = 0;
  ParamVec theta;
  ParamVec phi;
  int sample_count = 0;
};

struct GlobalBroadcast {
  bool has_phi = false;
  bool has_theta = false;
  ParamVec phi;
  ParamVec theta;
};

using Message = std::variant<ScheduleSignal, SeedAnnouncement,
                             DiscriminatorUpload, FedGanUpload, GlobalBroadcast>;

const char* message_type_name(const Message& m);
std::string message_to_json(const Message& m);

// Records all message traffic of a run when attached to a Simulation.
struct MessageTrace {
  std::vector<Message> messages;
};

// ---------------------------------------------------------------------------
// Pure round-timing composition rules. Shared by the round drivers and by the
// randomized timing-ordering tests.

struct RoundTimingInputs {
  std::vector<double> device_compute_s;  // one entry per uploading device
  std::vector<double> device_uplink_s;   // matching uplink durations
  double averaging_s = 0.0;
  double server_compute_s = 0.0;
  double broadcast_phi_s = 0.0;
  double broadcast_theta_s = 0.0;
};

// max(max_k(compute_k + uplink_k), server_compute) + averaging + both broadcasts
double parallel_round_duration(const RoundTimingInputs& t);
// max_k(compute_k + uplink_k) + averaging + max(server_compute, broadcast_phi)
//   + broadcast_theta
double serial_round_duration(const RoundTimingInputs& t);

// ---------------------------------------------------------------------------

class Simulation {
 public:
  // Builds dataset, placements, and model states from the master seed.
  explicit Simulation(const ExperimentConfig& cfg);

  // One communication round of the configured framework.
  RoundLog run_round();

  RoundLog run_parallel_round();
  RoundLog run_serial_round();
  RoundLog run_fedgan_round();
  RoundLog run_centralized_round();

  // Fréchet + coverage of fresh generator samples vs the held-out real set.
  // Consumes the evaluation noise stream; does not consume simulated time.
  MetricReport evaluate();

  const ServerState& server() const { return server_; }
  const std::vector<DeviceState>& devices() const { return devices_; }
  const std::vector<DevicePlacement>& placements() const { return placements_; }
  const GanSpec& gan_spec() const { return spec_; }
  const ExperimentConfig& config() const { return cfg_; }
  const std::vector<Vec2>& heldout_real() const { return heldout_; }
  double cumulative_time_s() const { return cumulative_time_s_; }
  int points_dropped() const { return points_dropped_; }

  std::vector<Vec2> generate_samples(int count);
  std::vector<LinkState> links_for_round(int round_index) const;

  void set_trace(MessageTrace* trace) { trace_ = trace; }

 private:
  ScheduleDecision decide_schedule(int round_index,
                                   const std::vector<LinkState>& links);
  std::vector<int> draw_failures(int round_index,
                                 const std::vector<int>& scheduled);
  void broadcast(const ParamVec* phi, const ParamVec* theta);
  void record(Message m);
  double broadcast_seconds(std::size_t param_count,
                           const std::vector<LinkState>& links) const;

  ExperimentConfig cfg_;
  GanSpec spec_;
  ServerState server_;
  std::vector<DeviceState> devices_;
  std::vector<DevicePlacement> placements_;
  std::vector<Vec2> heldout_;
  std::vector<Vec2> mode_means_;
  std::vector<double> pf_avg_rates_;
  std::uint64_t shadow_key_ = 0;
  std::uint64_t fail_key_ = 0;
  std::uint64_t eval_noise_key_ = 0;
  std::uint64_t eval_noise_offset_ = 0;
  double cumulative_time_s_ = 0.0;
  int points_dropped_ = 0;
  MessageTrace* trace_ = nullptr;
};

// Thrown when training parameters go non-finite; carries the failing round.
class TrainingDiverged : public NumericalError {
 public:
  TrainingDiverged(int round_index, const std::string& what)
      : NumericalError("round " + std::to_string(round_index) + ": " + what),
        round_index(round_index) {}
  int round_index;
};

struct ExperimentResult {
  std::vector<RoundLog> rounds;
  Mlp generator;
  Mlp discriminator;
  double initial_metric = 0.0;
  MetricReport final_metric;
  std::vector<Vec2> final_samples;
  double total_sim_time_s = 0.0;
  std::uint64_t total_uplink_bits = 0;
  std::uint64_t total_downlink_bits = 0;
  int rounds_to_target = -1;  // -1: target disabled or never reached
  int points_dropped = 0;
};

// Runs rounds until max_rounds or target_metric, evaluating every eval_every
// rounds. Deterministic in (config, master seed) including worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                MessageTrace* trace = nullptr);

}  // namespace dgansim
