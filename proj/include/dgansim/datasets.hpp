#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dgansim {

using Vec2 = std::array<double, 2>;

struct GaussianMode {
  Vec2 mean{0.0, 0.0};
  double stddev = 1.0;
};

// 2-D Gaussian mixture, the desk-scale stand-in for image datasets.
struct MixtureSpec {
  std::vector<GaussianMode> modes;
  std::vector<double> weights;  // sums to 1 within 1e-12

  void validate() const;  // throws std::invalid_argument
};

// num_modes equal-weight Gaussians with means on a circle of the given
// radius. The canonical mode-collapse testbed.
MixtureSpec ring_mixture(int num_modes, double radius, double stddev);

std::vector<Vec2> sample_mixture(const MixtureSpec& spec, int n,
                                 std::uint64_t seed);

// One device's private dataset. Shards never travel between device and
// server states; only parameters do.
struct DeviceShard {
  int device_id = 0;
  std::vector<Vec2> points;

  int size() const { return static_cast<int>(points.size()); }
};

// Random permutation split into K equal shards. If |points| is not divisible
// by K the tail of the permutation is dropped (caller records the count).
std::vector<DeviceShard> partition_equal(const std::vector<Vec2>& points, int K,
                                         std::uint64_t seed);

// One point per row: x, y, device_id.
void write_points_csv(const std::string& path,
                      const std::vector<DeviceShard>& shards);

}  // namespace dgansim
