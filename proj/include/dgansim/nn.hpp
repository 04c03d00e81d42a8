#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgansim {

// Flat vector of 64-bit model parameters. The unit exchanged between devices
// and the server; houses both generator and discriminator weights.
using ParamVec = std::vector<double>;

// Thrown when an update or gradient produces NaN/Inf. The caller aborts the
// run and reports the failing round.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class Act { identity, tanh, relu, leaky_relu, sigmoid };

Act parse_act(std::string_view name);
std::string_view act_name(Act a);

// Sigmoid outputs are clamped into [kSigmoidClamp, 1 - kSigmoidClamp] so the
// GAN losses log D and log(1 - D) stay finite. backward treats the clamp as
// part of the function (zero derivative where it binds).
inline constexpr double kSigmoidClamp = 1e-7;

struct MlpSpec {
  std::vector<int> layer_sizes;  // input dim first, output dim last
  Act hidden = Act::tanh;
  Act output = Act::identity;
  double leaky_slope = 0.2;

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
  std::size_t parameter_count() const;
  void validate() const;  // throws std::invalid_argument

  bool operator==(const MlpSpec&) const = default;
};

struct Mlp {
  MlpSpec spec;
  ParamVec params;
};

// Parameter layout: for each affine layer l, the weight matrix W_l (row-major
// by output unit, out x in) followed by the bias vector b_l (out). A LayerView
// is the unflattened view of one layer inside the flat vector.
struct LayerView {
  std::span<const double> weights;  // size out * in
  std::span<const double> biases;   // size out
  int in = 0;
  int out = 0;
};

std::vector<LayerView> layer_views(const MlpSpec& spec, const ParamVec& params);
ParamVec flatten(const std::vector<LayerView>& layers);

// Uniform [-a, a] weights with a = sqrt(6 / (fan_in + fan_out)), zero biases,
// one derived counter stream per layer. Deterministic in (spec, seed).
Mlp init_mlp(const MlpSpec& spec, std::uint64_t seed);

// Scratch buffers reused across samples of a batch. Sized lazily per spec.
struct MlpWorkspace {
  std::vector<std::vector<double>> acts;    // acts[0] = input, acts[l+1] = layer l output
  std::vector<std::vector<double>> derivs;  // activation derivative per layer output
  std::vector<double> delta;
  std::vector<double> delta_next;
};

// Forward pass caching activations for a later backward_cached call.
// Returns the output activation (owned by the workspace).
const std::vector<double>& forward_cached(const Mlp& mlp,
                                          std::span<const double> input,
                                          MlpWorkspace& ws);

// Gradient of (upstream . output) from the workspace of the last
// forward_cached. Accumulates (+=) into param_grad_accum when non-empty;
// writes the gradient w.r.t. the input into input_grad when non-empty.
void backward_cached(const Mlp& mlp, MlpWorkspace& ws,
                     std::span<const double> upstream,
                     std::span<double> param_grad_accum,
                     std::span<double> input_grad);

std::vector<double> forward(const Mlp& mlp, std::span<const double> input);

struct BackwardResult {
  ParamVec param_grad;
  std::vector<double> input_grad;
};

// Exact gradient of (upstream . forward(mlp, input)) w.r.t. params and input.
BackwardResult backward(const Mlp& mlp, std::span<const double> input,
                        std::span<const double> upstream);

// Central difference (f(p + eps e_i) - f(p - eps e_i)) / (2 eps) per
// coordinate. Test oracle for every analytic gradient in the project.
ParamVec finite_diff_grad(const std::function<double(const ParamVec&)>& f,
                          const ParamVec& p, double eps);

// p + step * g, inputs untouched. Shared kernel for the discriminator ascent
// and generator descent steps. Throws on length mismatch or non-finite result.
ParamVec axpy_update(const ParamVec& p, const ParamVec& g, double step);

bool all_finite(std::span<const double> v);

}  // namespace dgansim
