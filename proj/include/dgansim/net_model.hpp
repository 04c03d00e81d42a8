#pragma once

#include <cstdint>
#include <vector>

namespace dgansim {

// Wireless parameters. Defaults are the paper's small-cell setup: 300 m cell,
// 128.1 + 37.6 log10(d km) path loss, -174 dBm/Hz noise PSD, 24/46 dBm
// device/server transmit powers, 10 MHz band, 16-bit parameter quantization
// (payload size only; parameter values are never perturbed).
struct NetworkConfig {
  double cell_radius_km = 0.3;
  double pathloss_a = 128.1;
  double pathloss_b = 37.6;
  double noise_psd_dbm_hz = -174.0;
  double device_tx_dbm = 24.0;
  double server_tx_dbm = 46.0;
  double bandwidth_hz = 1e7;
  int bits_per_param = 16;
  // Per-round log-normal shadowing sigma in dB (0 disables). Used by the
  // scheduling-ratio experiment where channel quality varies round to round.
  double shadowing_sigma_db = 0.0;

  void validate() const;

  bool operator==(const NetworkConfig&) const = default;
};

struct DevicePlacement {
  int device_id = 0;
  double distance_km = 0.0;
};

struct LinkState {
  int device_id = 0;
  double uplink_rate_bps = 0.0;
  double downlink_rate_bps = 0.0;
};

// Log-distance path loss a + b log10(d km) in dB.
double path_loss_db(double a, double b, double d_km);

inline double path_loss_db(const NetworkConfig& net, double d_km) {
  return path_loss_db(net.pathloss_a, net.pathloss_b, d_km);
}

// Shannon rate: bandwidth * log2(1 + SNR) with
// SNR = 10^((tx - pl - noise_power_dbm) / 10), noise power over the band.
double link_rate_bps(double tx_dbm, double pl_db, double bandwidth_hz,
                     double noise_psd_dbm_hz);

std::uint64_t payload_bits(std::size_t param_count, int bits_per_param);

// Transmission time for param_count parameters at the given rate. `share` in
// (0, 1] models the uplink bandwidth split among simultaneously scheduled
// devices.
double transmit_time_s(std::size_t param_count, int bits_per_param,
                       double rate_bps, double share);

// Uniform placement over the disk (r = radius * sqrt(u)); distance floored
// at 0.001 km so the path loss stays finite.
std::vector<DevicePlacement> place_devices(int K, double radius_km,
                                           std::uint64_t seed);

// Link rates for one device with an extra shadowing term (dB) on top of the
// distance path loss. Same loss on both directions of the link.
LinkState make_link_state(const NetworkConfig& net,
                          const DevicePlacement& placement, double shadow_db);

}  // namespace dgansim
