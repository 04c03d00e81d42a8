#include "dgansim/net_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dgansim/rng.hpp"

namespace dgansim {

void NetworkConfig::validate() const {
  if (cell_radius_km <= 0.0)
    throw std::invalid_argument("network.cell_radius_km must be > 0");
  if (bandwidth_hz <= 0.0)
    throw std::invalid_argument("network.bandwidth_hz must be > 0");
  if (bits_per_param < 1)
    throw std::invalid_argument("network.bits_per_param must be >= 1");
  if (shadowing_sigma_db < 0.0)
    throw std::invalid_argument("network.shadowing_sigma_db must be >= 0");
}

double path_loss_db(double a, double b, double d_km) {
  if (d_km <= 0.0) throw std::invalid_argument("path_loss_db: distance must be > 0");
  return a + b * std::log10(d_km);
}

double link_rate_bps(double tx_dbm, double pl_db, double bandwidth_hz,
                     double noise_psd_dbm_hz) {
  if (bandwidth_hz <= 0.0)
    throw std::invalid_argument("link_rate_bps: bandwidth must be > 0");
  const double noise_dbm = noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
  const double snr_db = tx_dbm - pl_db - noise_dbm;
  const double snr = std::pow(10.0, snr_db / 10.0);
  return bandwidth_hz * std::log2(1.0 + snr);
}

std::uint64_t payload_bits(std::size_t param_count, int bits_per_param) {
  return static_cast<std::uint64_t>(param_count) *
         static_cast<std::uint64_t>(bits_per_param);
}

double transmit_time_s(std::size_t param_count, int bits_per_param,
                       double rate_bps, double share) {
  if (rate_bps <= 0.0) throw std::invalid_argument("transmit_time_s: rate must be > 0");
  if (share <= 0.0 || share > 1.0)
    throw std::invalid_argument("transmit_time_s: share must be in (0, 1]");
  return static_cast<double>(payload_bits(param_count, bits_per_param)) /
         (rate_bps * share);
}

std::vector<DevicePlacement> place_devices(int K, double radius_km,
                                           std::uint64_t seed) {
  if (K < 1) throw std::invalid_argument("place_devices: K >= 1");
  RngStream stream(seed);
  std::vector<DevicePlacement> out;
  out.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    const double r = radius_km * std::sqrt(stream.next_unit());
    stream.next_unit();  // angle; distance is all the link budget needs
    out.push_back({k, std::max(r, 0.001)});
  }
  return out;
}

LinkState make_link_state(const NetworkConfig& net,
                          const DevicePlacement& placement, double shadow_db) {
  const double pl = path_loss_db(net, placement.distance_km) + shadow_db;
  LinkState link;
  link.device_id = placement.device_id;
  link.uplink_rate_bps =
      link_rate_bps(net.device_tx_dbm, pl, net.bandwidth_hz, net.noise_psd_dbm_hz);
  link.downlink_rate_bps =
      link_rate_bps(net.server_tx_dbm, pl, net.bandwidth_hz, net.noise_psd_dbm_hz);
  return link;
}

}  // namespace dgansim
