#include "dgansim/gan.hpp"

#include <cmath>
#include <stdexcept>

#include "dgansim/rng.hpp"

namespace dgansim {

void GanSpec::validate() const {
  generator.validate();
  discriminator.validate();
  if (noise_dim < 1) throw std::invalid_argument("GanSpec: noise_dim >= 1");
  if (generator.input_dim() != noise_dim)
    throw std::invalid_argument("GanSpec: generator input dim != noise_dim");
  if (generator.output_dim() != discriminator.input_dim())
    throw std::invalid_argument(
        "GanSpec: generator output dim != discriminator input dim");
  if (discriminator.output_dim() != 1 ||
      discriminator.output != Act::sigmoid)
    throw std::invalid_argument(
        "GanSpec: discriminator must end in a single sigmoid unit");
}

NoiseBatch make_noise_batch(std::uint64_t key, std::uint64_t offset, int count,
                            int dim) {
  if (count < 0 || dim < 1)
    throw std::invalid_argument("make_noise_batch: bad count/dim");
  NoiseBatch batch;
  batch.source_key = key;
  batch.stream_offset = offset;
  batch.samples.resize(static_cast<std::size_t>(count));
  RngStream stream(key, offset);
  for (auto& s : batch.samples) {
    s.resize(static_cast<std::size_t>(dim));
    for (double& v : s) v = stream.next_gaussian();
  }
  return batch;
}

ParamVec grad_theta(const ParamVec& theta, const ParamVec& phi,
                    const NoiseBatch& z, const GanSpec& spec) {
  spec.validate();
  if (z.samples.empty()) throw std::invalid_argument("grad_theta: empty batch");
  const Mlp gen{spec.generator, theta};
  const Mlp disc{spec.discriminator, phi};

  ParamVec accum(theta.size(), 0.0);
  std::vector<double> d_fake(static_cast<std::size_t>(spec.generator.output_dim()));
  MlpWorkspace ws_g, ws_d;
  double upstream_d[1];
  for (const auto& zi : z.samples) {
    const auto& fake = forward_cached(gen, zi, ws_g);
    const double p = forward_cached(disc, fake, ws_d)[0];
    upstream_d[0] = -1.0 / (1.0 - p);  // d/dp log(1 - p)
    backward_cached(disc, ws_d, std::span<const double>(upstream_d, 1), {},
                    d_fake);
    backward_cached(gen, ws_g, d_fake, accum, {});
  }
  const double inv_m = 1.0 / static_cast<double>(z.samples.size());
  for (double& v : accum) v *= inv_m;
  if (!all_finite(accum)) throw NumericalError("grad_theta: non-finite gradient");
  return accum;
}

ParamVec grad_phi(const ParamVec& theta, const ParamVec& phi,
                  const NoiseBatch& z, const DataBatch& x,
                  const GanSpec& spec) {
  spec.validate();
  if (z.samples.empty() || z.samples.size() != x.samples.size())
    throw std::invalid_argument("grad_phi: |z| must equal |x| and be non-empty");
  const Mlp gen{spec.generator, theta};
  const Mlp disc{spec.discriminator, phi};

  ParamVec accum(phi.size(), 0.0);
  MlpWorkspace ws_g, ws_d;
  double upstream_d[1];
  for (std::size_t i = 0; i < z.samples.size(); ++i) {
    // real term: d/dphi log D(x_i)
    const double p_real = forward_cached(disc, x.samples[i], ws_d)[0];
    upstream_d[0] = 1.0 / p_real;
    backward_cached(disc, ws_d, std::span<const double>(upstream_d, 1), accum, {});
    // fake term: d/dphi log(1 - D(G(z_i)))
    const auto& fake = forward_cached(gen, z.samples[i], ws_g);
    const double p_fake = forward_cached(disc, fake, ws_d)[0];
    upstream_d[0] = -1.0 / (1.0 - p_fake);
    backward_cached(disc, ws_d, std::span<const double>(upstream_d, 1), accum, {});
  }
  const double inv_m = 1.0 / static_cast<double>(z.samples.size());
  for (double& v : accum) v *= inv_m;
  if (!all_finite(accum)) throw NumericalError("grad_phi: non-finite gradient");
  return accum;
}

ParamVec average_discriminators(
    const std::vector<std::pair<ParamVec, int>>& contributions) {
  if (contributions.empty())
    throw std::invalid_argument(
        "average_discriminators: empty contribution set");
  const std::size_t len = contributions.front().first.size();
  double total_weight = 0.0;
  ParamVec out(len, 0.0);
  for (const auto& [phi_k, m_k] : contributions) {
    if (phi_k.size() != len)
      throw std::invalid_argument("average_discriminators: length mismatch");
    if (m_k < 1)
      throw std::invalid_argument("average_discriminators: m_k must be >= 1");
    const double w = static_cast<double>(m_k);
    total_weight += w;
    for (std::size_t j = 0; j < len; ++j) out[j] += w * phi_k[j];
  }
  for (double& v : out) v /= total_weight;
  return out;
}

DeviceUpdateResult device_update(const ParamVec& theta, const ParamVec& phi_in,
                                 const DeviceShard& shard, int batch_size,
                                 std::uint64_t noise_key,
                                 std::uint64_t noise_offset,
                                 std::uint64_t data_key,
                                 std::uint64_t data_offset, int n_d,
                                 double eta_d, const GanSpec& spec) {
  if (shard.points.empty())
    throw std::invalid_argument("device_update: empty local dataset");
  if (batch_size < 1) throw std::invalid_argument("device_update: batch_size >= 1");
  if (n_d < 1) throw std::invalid_argument("device_update: n_d >= 1");

  DeviceUpdateResult res;
  res.phi = phi_in;
  res.noise_offset = noise_offset;
  res.data_offset = data_offset;

  DataBatch batch;
  batch.samples.resize(static_cast<std::size_t>(batch_size));
  const std::uint64_t n = shard.points.size();
  for (int j = 0; j < n_d; ++j) {
    const NoiseBatch z =
        make_noise_batch(noise_key, res.noise_offset, batch_size, spec.noise_dim);
    res.noise_offset += noise_words(batch_size, spec.noise_dim);
    for (int i = 0; i < batch_size; ++i) {
      const std::uint64_t idx = rng_word(data_key, res.data_offset++) % n;
      const Vec2& p = shard.points[idx];
      batch.samples[static_cast<std::size_t>(i)] = {p[0], p[1]};
    }
    const ParamVec g = grad_phi(theta, res.phi, z, batch, spec);
    res.phi = axpy_update(res.phi, g, +eta_d);  // ascent
  }
  return res;
}

ParamVec server_generator_update(const ParamVec& theta_in, const ParamVec& phi,
                                 int n_g, double eta_g,
                                 std::span<const NoiseBatch> step_noise,
                                 const GanSpec& spec) {
  if (n_g < 1) throw std::invalid_argument("server_generator_update: n_g >= 1");
  if (static_cast<int>(step_noise.size()) != n_g)
    throw std::invalid_argument(
        "server_generator_update: need one noise batch per step");
  ParamVec theta = theta_in;
  for (int j = 0; j < n_g; ++j) {
    const ParamVec g = grad_theta(theta, phi, step_noise[j], spec);
    theta = axpy_update(theta, g, -eta_g);  // descent
  }
  return theta;
}

GeneratorUpdateResult server_generator_update(const ParamVec& theta_in,
                                              const ParamVec& phi, int n_g,
                                              double eta_g, int batch_M,
                                              std::uint64_t noise_key,
                                              std::uint64_t noise_offset,
                                              const GanSpec& spec) {
  if (batch_M < 1) throw std::invalid_argument("server_generator_update: M >= 1");
  std::vector<NoiseBatch> steps;
  steps.reserve(static_cast<std::size_t>(n_g));
  std::uint64_t off = noise_offset;
  for (int j = 0; j < n_g; ++j) {
    steps.push_back(make_noise_batch(noise_key, off, batch_M, spec.noise_dim));
    off += noise_words(batch_M, spec.noise_dim);
  }
  GeneratorUpdateResult res;
  res.theta = server_generator_update(theta_in, phi, n_g, eta_g, steps, spec);
  res.noise_offset = off;
  return res;
}

std::vector<Vec2> generate_points(const ParamVec& theta, const GanSpec& spec,
                                  int count, std::uint64_t noise_key,
                                  std::uint64_t* noise_offset) {
  if (spec.generator.output_dim() != 2)
    throw std::invalid_argument("generate_points: generator output must be 2-D");
  const Mlp gen{spec.generator, theta};
  std::uint64_t off = noise_offset ? *noise_offset : 0;
  const NoiseBatch z = make_noise_batch(noise_key, off, count, spec.noise_dim);
  off += noise_words(count, spec.noise_dim);
  if (noise_offset) *noise_offset = off;
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(count));
  MlpWorkspace ws;
  for (const auto& zi : z.samples) {
    const auto& y = forward_cached(gen, zi, ws);
    pts.push_back({y[0], y[1]});
  }
  return pts;
}

}  // namespace dgansim
