#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dgansim/datasets.hpp"
#include "dgansim/nn.hpp"

namespace dgansim {

// Shapes of the generator/discriminator pair. The generator maps noise_dim
// inputs to data-dim outputs; the discriminator maps data-dim inputs to one
// sigmoid probability.
struct GanSpec {
  MlpSpec generator;
  MlpSpec discriminator;
  int noise_dim = 0;

  void validate() const;
};

// A batch of noise vectors together with the stream coordinates they came
// from. Regenerating from (source_key, stream_offset, count) reproduces the
// samples bitwise; this is what lets the server rebuild device noise from a
// seed announcement.
struct NoiseBatch {
  std::vector<std::vector<double>> samples;
  std::uint64_t source_key = 0;
  std::uint64_t stream_offset = 0;
};

// Words consumed by one batch: each gaussian takes exactly two stream words.
inline std::uint64_t noise_words(int count, int dim) {
  return 2ull * static_cast<std::uint64_t>(count) * static_cast<std::uint64_t>(dim);
}

NoiseBatch make_noise_batch(std::uint64_t key, std::uint64_t offset, int count,
                            int dim);

struct DataBatch {
  std::vector<std::vector<double>> samples;
};

// Batch mean of grad_theta log(1 - D(phi, G(theta, z_i))).
ParamVec grad_theta(const ParamVec& theta, const ParamVec& phi,
                    const NoiseBatch& z, const GanSpec& spec);

// Batch mean of grad_phi [log D(phi, x_i) + log(1 - D(phi, G(theta, z_i)))].
ParamVec grad_phi(const ParamVec& theta, const ParamVec& phi,
                  const NoiseBatch& z, const DataBatch& x, const GanSpec& spec);

// Sample-size-weighted mean of uploaded discriminators:
// (1 / sum m_k) * sum m_k phi_k. Throws on an empty contribution set
// (every device excluded; the round aborts).
ParamVec average_discriminators(
    const std::vector<std::pair<ParamVec, int>>& contributions);

// Device k's update: n_d mini-batch ascent steps on the local discriminator
// with theta held fixed. Noise comes from (noise_key, noise_offset), data
// indices are drawn uniformly with replacement from the shard via
// (data_key, data_offset). Returns phi after n_d steps plus the advanced
// stream offsets.
struct DeviceUpdateResult {
  ParamVec phi;
  std::uint64_t noise_offset = 0;
  std::uint64_t data_offset = 0;
};

DeviceUpdateResult device_update(const ParamVec& theta, const ParamVec& phi_in,
                                 const DeviceShard& shard, int batch_size,
                                 std::uint64_t noise_key,
                                 std::uint64_t noise_offset,
                                 std::uint64_t data_key,
                                 std::uint64_t data_offset, int n_d,
                                 double eta_d, const GanSpec& spec);

// Server generator update: n_g descent steps with phi held fixed, one noise
// batch per step. step_noise.size() must equal n_g.
ParamVec server_generator_update(const ParamVec& theta_in, const ParamVec& phi,
                                 int n_g, double eta_g,
                                 std::span<const NoiseBatch> step_noise,
                                 const GanSpec& spec);

// Convenience overload drawing M samples per step from a keyed stream.
struct GeneratorUpdateResult {
  ParamVec theta;
  std::uint64_t noise_offset = 0;
};

GeneratorUpdateResult server_generator_update(const ParamVec& theta_in,
                                              const ParamVec& phi, int n_g,
                                              double eta_g, int batch_M,
                                              std::uint64_t noise_key,
                                              std::uint64_t noise_offset,
                                              const GanSpec& spec);

// Generator samples for evaluation/export: G(theta, z) over count draws.
std::vector<Vec2> generate_points(const ParamVec& theta, const GanSpec& spec,
                                  int count, std::uint64_t noise_key,
                                  std::uint64_t* noise_offset);

}  // namespace dgansim
