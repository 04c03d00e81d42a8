#pragma once

#include <vector>

#include "dgansim/net_model.hpp"

namespace dgansim {

// The subset S of devices participating in one round.
struct ScheduleDecision {
  int round_index = 0;
  std::vector<int> scheduled;  // ascending device ids
  double ratio = 1.0;
};

// max(1, round(ratio * K)), capped at K.
int num_scheduled(double ratio, int K);

// Devices (round_index * n_sched + j) mod K for j = 0..n_sched-1.
ScheduleDecision round_robin(int K, int round_index, int n_sched);

// Top max(1, round(ratio*K)) devices by uplink rate; ties to the lower id.
ScheduleDecision best_channel(const std::vector<LinkState>& links, double ratio,
                              int round_index);

// Proportional fair: top devices by instantaneous/average rate. avg_rates is
// the caller-owned EMA state; empty means first call and initializes to the
// instantaneous rates. Updated in place for scheduled and unscheduled devices:
// avg <- (1-beta)*avg + beta*rate*1[scheduled].
ScheduleDecision proportional_fair(const std::vector<LinkState>& links,
                                   std::vector<double>& avg_rates, double ratio,
                                   int round_index, double beta);

}  // namespace dgansim
