#include "dgansim/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "dgansim/rng.hpp"

namespace dgansim {

Act parse_act(std::string_view name) {
  if (name == "identity") return Act::identity;
  if (name == "tanh") return Act::tanh;
  if (name == "relu") return Act::relu;
  if (name == "leaky_relu") return Act::leaky_relu;
  if (name == "sigmoid") return Act::sigmoid;
  throw std::invalid_argument("unknown activation: " + std::string(name));
}

std::string_view act_name(Act a) {
  switch (a) {
    case Act::identity: return "identity";
    case Act::tanh: return "tanh";
    case Act::relu: return "relu";
    case Act::leaky_relu: return "leaky_relu";
    case Act::sigmoid: return "sigmoid";
  }
  return "?";
}

std::size_t MlpSpec::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    n += static_cast<std::size_t>(layer_sizes[l]) * layer_sizes[l + 1] +
         layer_sizes[l + 1];
  }
  return n;
}

void MlpSpec::validate() const {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("MlpSpec: need at least 2 layer sizes");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("MlpSpec: layer sizes must be >= 1");
  if (hidden == Act::sigmoid)
    throw std::invalid_argument("MlpSpec: sigmoid is an output activation");
  if (output != Act::identity && output != Act::sigmoid)
    throw std::invalid_argument("MlpSpec: output activation must be identity or sigmoid");
  if (leaky_slope <= 0.0 || leaky_slope >= 1.0)
    throw std::invalid_argument("MlpSpec: leaky_slope must be in (0, 1)");
}

std::vector<LayerView> layer_views(const MlpSpec& spec, const ParamVec& params) {
  if (params.size() != spec.parameter_count())
    throw std::invalid_argument("layer_views: params.size() != parameter_count(spec)");
  std::vector<LayerView> views;
  std::size_t off = 0;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const int in = spec.layer_sizes[l];
    const int out = spec.layer_sizes[l + 1];
    LayerView v;
    v.in = in;
    v.out = out;
    v.weights = std::span<const double>(params.data() + off,
                                        static_cast<std::size_t>(in) * out);
    off += static_cast<std::size_t>(in) * out;
    v.biases = std::span<const double>(params.data() + off, out);
    off += out;
    views.push_back(v);
  }
  return views;
}

ParamVec flatten(const std::vector<LayerView>& layers) {
  ParamVec flat;
  for (const auto& l : layers) {
    flat.insert(flat.end(), l.weights.begin(), l.weights.end());
    flat.insert(flat.end(), l.biases.begin(), l.biases.end());
  }
  return flat;
}

Mlp init_mlp(const MlpSpec& spec, std::uint64_t seed) {
  spec.validate();
  Mlp mlp;
  mlp.spec = spec;
  mlp.params.assign(spec.parameter_count(), 0.0);
  std::size_t off = 0;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const int in = spec.layer_sizes[l];
    const int out = spec.layer_sizes[l + 1];
    const double a = std::sqrt(6.0 / (in + out));
    RngStream stream(derive_stream(seed, "mlp_init_layer", static_cast<std::uint64_t>(l)));
    for (int i = 0; i < in * out; ++i)
      mlp.params[off + i] = stream.next_uniform(-a, a);
    off += static_cast<std::size_t>(in) * out + out;  // biases stay zero
  }
  return mlp;
}

namespace {

inline double apply_act(Act a, double z, double slope) {
  switch (a) {
    case Act::identity: return z;
    case Act::tanh: return std::tanh(z);
    case Act::relu: return z > 0.0 ? z : 0.0;
    case Act::leaky_relu: return z > 0.0 ? z : slope * z;
    case Act::sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return std::clamp(s, kSigmoidClamp, 1.0 - kSigmoidClamp);
    }
  }
  return z;
}

// Derivative of the (possibly clamped) activation, from pre-activation z.
inline double act_deriv(Act a, double z, double slope) {
  switch (a) {
    case Act::identity: return 1.0;
    case Act::tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Act::relu: return z > 0.0 ? 1.0 : 0.0;
    case Act::leaky_relu: return z > 0.0 ? 1.0 : slope;
    case Act::sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      if (s < kSigmoidClamp || s > 1.0 - kSigmoidClamp) return 0.0;  // clamp binds
      return s * (1.0 - s);
    }
  }
  return 1.0;
}

void ensure_workspace(const MlpSpec& spec, MlpWorkspace& ws) {
  const std::size_t L = static_cast<std::size_t>(spec.num_layers());
  ws.acts.resize(L + 1);
  ws.derivs.resize(L);
  for (std::size_t l = 0; l <= L; ++l)
    ws.acts[l].resize(static_cast<std::size_t>(spec.layer_sizes[l]));
  for (std::size_t l = 0; l < L; ++l)
    ws.derivs[l].resize(static_cast<std::size_t>(spec.layer_sizes[l + 1]));
}

}  // namespace

const std::vector<double>& forward_cached(const Mlp& mlp,
                                          std::span<const double> input,
                                          MlpWorkspace& ws) {
  const MlpSpec& spec = mlp.spec;
  if (static_cast<int>(input.size()) != spec.input_dim())
    throw std::invalid_argument("forward: input size != first layer size");
  if (mlp.params.size() != spec.parameter_count())
    throw std::invalid_argument("forward: params.size() != parameter_count(spec)");
  ensure_workspace(spec, ws);

  std::copy(input.begin(), input.end(), ws.acts[0].begin());
  const double* p = mlp.params.data();
  const int L = spec.num_layers();
  for (int l = 0; l < L; ++l) {
    const int in = spec.layer_sizes[l];
    const int out = spec.layer_sizes[l + 1];
    const double* W = p;
    const double* b = p + static_cast<std::size_t>(in) * out;
    const double* x = ws.acts[l].data();
    double* y = ws.acts[l + 1].data();
    double* dv = ws.derivs[l].data();
    const Act a = (l == L - 1) ? spec.output : spec.hidden;
    for (int o = 0; o < out; ++o) {
      const double* w_row = W + static_cast<std::size_t>(o) * in;
      double z = b[o];
      for (int i = 0; i < in; ++i) z += w_row[i] * x[i];
      y[o] = apply_act(a, z, spec.leaky_slope);
      dv[o] = act_deriv(a, z, spec.leaky_slope);
    }
    p = b + out;
  }
  return ws.acts.back();
}

void backward_cached(const Mlp& mlp, MlpWorkspace& ws,
                     std::span<const double> upstream,
                     std::span<double> param_grad_accum,
                     std::span<double> input_grad) {
  const MlpSpec& spec = mlp.spec;
  if (static_cast<int>(upstream.size()) != spec.output_dim())
    throw std::invalid_argument("backward: upstream size != output dim");
  if (!param_grad_accum.empty() &&
      param_grad_accum.size() != spec.parameter_count())
    throw std::invalid_argument("backward: param_grad size != parameter_count");
  if (!input_grad.empty() &&
      static_cast<int>(input_grad.size()) != spec.input_dim())
    throw std::invalid_argument("backward: input_grad size != input dim");

  const int L = spec.num_layers();
  // delta = d(upstream . output) / d(pre-activation of current layer)
  std::vector<double>& delta = ws.delta;
  std::vector<double>& delta_next = ws.delta_next;
  delta.assign(upstream.begin(), upstream.end());
  for (int o = 0; o < spec.output_dim(); ++o) delta[o] *= ws.derivs[L - 1][o];

  // Offset of layer l's weights inside the flat parameter vector.
  std::vector<std::size_t> offsets(L);
  std::size_t off = 0;
  for (int l = 0; l < L; ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(spec.layer_sizes[l]) * spec.layer_sizes[l + 1] +
           spec.layer_sizes[l + 1];
  }

  for (int l = L - 1; l >= 0; --l) {
    const int in = spec.layer_sizes[l];
    const int out = spec.layer_sizes[l + 1];
    const double* W = mlp.params.data() + offsets[l];
    const double* x = ws.acts[l].data();

    if (!param_grad_accum.empty()) {
      double* gW = param_grad_accum.data() + offsets[l];
      double* gb = gW + static_cast<std::size_t>(in) * out;
      for (int o = 0; o < out; ++o) {
        const double d = delta[o];
        double* gw_row = gW + static_cast<std::size_t>(o) * in;
        for (int i = 0; i < in; ++i) gw_row[i] += d * x[i];
        gb[o] += d;
      }
    }

    const bool need_input = l > 0 || !input_grad.empty();
    if (!need_input) break;
    delta_next.assign(static_cast<std::size_t>(in), 0.0);
    for (int o = 0; o < out; ++o) {
      const double d = delta[o];
      const double* w_row = W + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) delta_next[i] += d * w_row[i];
    }
    if (l > 0) {
      const double* dv = ws.derivs[l - 1].data();
      delta.resize(delta_next.size());
      for (int i = 0; i < in; ++i) delta[i] = delta_next[i] * dv[i];
    } else if (!input_grad.empty()) {
      std::copy(delta_next.begin(), delta_next.end(), input_grad.begin());
    }
  }
}

std::vector<double> forward(const Mlp& mlp, std::span<const double> input) {
  MlpWorkspace ws;
  return forward_cached(mlp, input, ws);
}

BackwardResult backward(const Mlp& mlp, std::span<const double> input,
                        std::span<const double> upstream) {
  MlpWorkspace ws;
  forward_cached(mlp, input, ws);
  BackwardResult r;
  r.param_grad.assign(mlp.spec.parameter_count(), 0.0);
  r.input_grad.assign(static_cast<std::size_t>(mlp.spec.input_dim()), 0.0);
  backward_cached(mlp, ws, upstream, r.param_grad, r.input_grad);
  return r;
}

ParamVec finite_diff_grad(const std::function<double(const ParamVec&)>& f,
                          const ParamVec& p, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("finite_diff_grad: eps must be > 0");
  ParamVec grad(p.size());
  ParamVec probe = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    probe[i] = p[i] + eps;
    const double hi = f(probe);
    probe[i] = p[i] - eps;
    const double lo = f(probe);
    probe[i] = p[i];
    grad[i] = (hi - lo) / (2.0 * eps);
  }
  return grad;
}

ParamVec axpy_update(const ParamVec& p, const ParamVec& g, double step) {
  if (p.size() != g.size())
    throw std::invalid_argument("axpy_update: length mismatch");
  ParamVec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] + step * g[i];
  if (!all_finite(out)) throw NumericalError("axpy_update: non-finite result");
  return out;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace dgansim
