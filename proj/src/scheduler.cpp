#include "dgansim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgansim {

int num_scheduled(double ratio, int K) {
  if (ratio <= 0.0 || ratio > 1.0)
    throw std::invalid_argument("scheduler.ratio must be in (0, 1]");
  const int n = static_cast<int>(std::llround(ratio * K));
  return std::min(K, std::max(1, n));
}

ScheduleDecision round_robin(int K, int round_index, int n_sched) {
  if (n_sched < 1 || n_sched > K)
    throw std::invalid_argument("round_robin: n_sched out of range");
  ScheduleDecision dec;
  dec.round_index = round_index;
  dec.ratio = static_cast<double>(n_sched) / K;
  for (int j = 0; j < n_sched; ++j)
    dec.scheduled.push_back(
        static_cast<int>((static_cast<long long>(round_index) * n_sched + j) % K));
  std::sort(dec.scheduled.begin(), dec.scheduled.end());
  return dec;
}

namespace {

// Top-n device ids by metric, ties to the lower id.
std::vector<int> top_by_metric(const std::vector<LinkState>& links,
                               const std::vector<double>& metric, int n) {
  std::vector<int> order(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (metric[a] != metric[b]) return metric[a] > metric[b];
    return links[a].device_id < links[b].device_id;
  });
  std::vector<int> chosen;
  for (int i = 0; i < n; ++i) chosen.push_back(links[order[i]].device_id);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

ScheduleDecision best_channel(const std::vector<LinkState>& links, double ratio,
                              int round_index) {
  if (links.empty()) throw std::invalid_argument("best_channel: empty link list");
  const int K = static_cast<int>(links.size());
  const int n = num_scheduled(ratio, K);
  std::vector<double> metric(links.size());
  for (std::size_t i = 0; i < links.size(); ++i)
    metric[i] = links[i].uplink_rate_bps;
  ScheduleDecision dec;
  dec.round_index = round_index;
  dec.ratio = ratio;
  dec.scheduled = top_by_metric(links, metric, n);
  return dec;
}

ScheduleDecision proportional_fair(const std::vector<LinkState>& links,
                                   std::vector<double>& avg_rates, double ratio,
                                   int round_index, double beta) {
  if (links.empty())
    throw std::invalid_argument("proportional_fair: empty link list");
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("proportional_fair: beta must be in (0, 1)");
  const int K = static_cast<int>(links.size());
  if (avg_rates.empty()) {
    avg_rates.resize(links.size());
    for (std::size_t i = 0; i < links.size(); ++i)
      avg_rates[i] = links[i].uplink_rate_bps;
  }
  if (avg_rates.size() != links.size())
    throw std::invalid_argument("proportional_fair: avg_rates size mismatch");
  for (double r : avg_rates)
    if (r <= 0.0)
      throw std::invalid_argument("proportional_fair: avg_rates must be positive");

  const int n = num_scheduled(ratio, K);
  std::vector<double> metric(links.size());
  for (std::size_t i = 0; i < links.size(); ++i)
    metric[i] = links[i].uplink_rate_bps / avg_rates[i];
  ScheduleDecision dec;
  dec.round_index = round_index;
  dec.ratio = ratio;
  dec.scheduled = top_by_metric(links, metric, n);

  std::vector<bool> sched(links.size(), false);
  for (int id : dec.scheduled)
    for (std::size_t i = 0; i < links.size(); ++i)
      if (links[i].device_id == id) sched[i] = true;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const double served = sched[i] ? links[i].uplink_rate_bps : 0.0;
    avg_rates[i] = (1.0 - beta) * avg_rates[i] + beta * served;
  }
  return dec;
}

}  // namespace dgansim
