#include "dgansim/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "dgansim/rng.hpp"

namespace dgansim {

void MixtureSpec::validate() const {
  if (modes.empty()) throw std::invalid_argument("MixtureSpec: at least one mode");
  if (weights.size() != modes.size())
    throw std::invalid_argument("MixtureSpec: weights/modes size mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("MixtureSpec: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("MixtureSpec: weights must sum to 1");
  for (const auto& m : modes)
    if (m.stddev <= 0.0)
      throw std::invalid_argument("MixtureSpec: mode std must be positive");
}

MixtureSpec ring_mixture(int num_modes, double radius, double stddev) {
  if (num_modes < 1) throw std::invalid_argument("ring_mixture: num_modes >= 1");
  MixtureSpec spec;
  for (int i = 0; i < num_modes; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / num_modes;
    spec.modes.push_back({{radius * std::cos(angle), radius * std::sin(angle)}, stddev});
    spec.weights.push_back(1.0 / num_modes);
  }
  return spec;
}

std::vector<Vec2> sample_mixture(const MixtureSpec& spec, int n,
                                 std::uint64_t seed) {
  spec.validate();
  if (n < 0) throw std::invalid_argument("sample_mixture: n >= 0");
  RngStream stream(seed);
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = stream.next_unit();
    std::size_t mode = 0;
    double cdf = 0.0;
    for (std::size_t m = 0; m < spec.weights.size(); ++m) {
      cdf += spec.weights[m];
      if (u < cdf) {
        mode = m;
        break;
      }
      mode = m;  // u == 1 edge lands in the last mode
    }
    const auto& g = spec.modes[mode];
    out.push_back({g.mean[0] + g.stddev * stream.next_gaussian(),
                   g.mean[1] + g.stddev * stream.next_gaussian()});
  }
  return out;
}

std::vector<DeviceShard> partition_equal(const std::vector<Vec2>& points, int K,
                                         std::uint64_t seed) {
  if (K < 1) throw std::invalid_argument("partition_equal: K >= 1");
  const std::size_t n = points.size();
  const std::size_t used = (n / K) * K;

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  RngStream stream(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = stream.next_index(i);
    std::swap(perm[i - 1], perm[j]);
  }

  const std::size_t per = used / K;
  std::vector<DeviceShard> shards(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    shards[k].device_id = k;
    shards[k].points.reserve(per);
    for (std::size_t i = 0; i < per; ++i)
      shards[k].points.push_back(points[perm[k * per + i]]);
  }
  return shards;
}

void write_points_csv(const std::string& path,
                      const std::vector<DeviceShard>& shards) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "x,y,device_id\n");
  for (const auto& s : shards)
    for (const auto& p : s.points)
      std::fprintf(f, "%.17g,%.17g,%d\n", p[0], p[1], s.device_id);
  std::fclose(f);
}

}  // namespace dgansim
