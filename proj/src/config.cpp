#include "dgansim/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dgansim {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw std::invalid_argument(std::string(key) + ": expected a number, got '" +
                                s + "'");
  return v;
}

long long parse_int(std::string_view key, std::string_view value) {
  long long v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument(std::string(key) + ": expected an integer, got '" +
                                std::string(value) + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument(std::string(key) +
                                ": expected an unsigned integer, got '" +
                                std::string(value) + "'");
  return v;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  std::string item;
  std::stringstream ss{std::string(value)};
  while (std::getline(ss, item, ',')) {
    // trim
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw std::invalid_argument(std::string(key) + ": empty list element");
    out.push_back(static_cast<int>(parse_int(key, item.substr(b, e - b + 1))));
  }
  if (out.empty())
    throw std::invalid_argument(std::string(key) + ": expected a list");
  return out;
}

std::string format_int_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

struct Field {
  std::string name;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<Field>& registry() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    auto add = [&f](std::string name,
                    std::function<void(ExperimentConfig&, std::string_view)> set,
                    std::function<std::string(const ExperimentConfig&)> get) {
      f.push_back({std::move(name), std::move(set), std::move(get)});
    };

#define DG_STR(member)                                                      \
  [](ExperimentConfig& c, std::string_view v) { c.member = std::string(v); }, \
      [](const ExperimentConfig& c) { return c.member; }
#define DG_DOUBLE(key, member)                                       \
  [](ExperimentConfig& c, std::string_view v) {                      \
    c.member = parse_double(key, v);                                 \
  },                                                                 \
      [](const ExperimentConfig& c) { return format_double(c.member); }
#define DG_INT(key, member)                                              \
  [](ExperimentConfig& c, std::string_view v) {                          \
    c.member = static_cast<int>(parse_int(key, v));                      \
  },                                                                     \
      [](const ExperimentConfig& c) { return std::to_string(c.member); }
#define DG_U64(key, member)                                              \
  [](ExperimentConfig& c, std::string_view v) { c.member = parse_u64(key, v); }, \
      [](const ExperimentConfig& c) { return std::to_string(c.member); }
#define DG_ILIST(key, member)                                               \
  [](ExperimentConfig& c, std::string_view v) {                             \
    c.member = parse_int_list(key, v);                                      \
  },                                                                        \
      [](const ExperimentConfig& c) { return format_int_list(c.member); }

    add("framework", DG_STR(framework));
    add("num_devices", DG_INT("num_devices", num_devices));
    add("scheduler.policy", DG_STR(scheduler.policy));
    add("scheduler.ratio", DG_DOUBLE("scheduler.ratio", scheduler.ratio));
    add("scheduler.pf_beta", DG_DOUBLE("scheduler.pf_beta", scheduler.pf_beta));
    add("network.cell_radius_km",
        DG_DOUBLE("network.cell_radius_km", network.cell_radius_km));
    add("network.pathloss_a", DG_DOUBLE("network.pathloss_a", network.pathloss_a));
    add("network.pathloss_b", DG_DOUBLE("network.pathloss_b", network.pathloss_b));
    add("network.noise_psd_dbm_hz",
        DG_DOUBLE("network.noise_psd_dbm_hz", network.noise_psd_dbm_hz));
    add("network.device_tx_dbm",
        DG_DOUBLE("network.device_tx_dbm", network.device_tx_dbm));
    add("network.server_tx_dbm",
        DG_DOUBLE("network.server_tx_dbm", network.server_tx_dbm));
    add("network.bandwidth_hz",
        DG_DOUBLE("network.bandwidth_hz", network.bandwidth_hz));
    add("network.bits_per_param",
        DG_INT("network.bits_per_param", network.bits_per_param));
    add("network.shadowing_sigma_db",
        DG_DOUBLE("network.shadowing_sigma_db", network.shadowing_sigma_db));
    add("model.noise_dim", DG_INT("model.noise_dim", model.noise_dim));
    add("model.gen_hidden", DG_ILIST("model.gen_hidden", model.gen_hidden));
    add("model.disc_hidden", DG_ILIST("model.disc_hidden", model.disc_hidden));
    add("model.gen_hidden_act", DG_STR(model.gen_hidden_act));
    add("model.disc_hidden_act", DG_STR(model.disc_hidden_act));
    add("model.leaky_slope", DG_DOUBLE("model.leaky_slope", model.leaky_slope));
    add("hyper.n_d", DG_INT("hyper.n_d", hyper.n_d));
    add("hyper.n_g", DG_INT("hyper.n_g", hyper.n_g));
    add("hyper.eta_d", DG_DOUBLE("hyper.eta_d", hyper.eta_d));
    add("hyper.eta_g", DG_DOUBLE("hyper.eta_g", hyper.eta_g));
    add("hyper.m_k", DG_INT("hyper.m_k", hyper.m_k));
    add("hyper.M", DG_INT("hyper.M", hyper.batch_M));
    add("data.num_modes", DG_INT("data.num_modes", data.num_modes));
    add("data.ring_radius", DG_DOUBLE("data.ring_radius", data.ring_radius));
    add("data.mode_std", DG_DOUBLE("data.mode_std", data.mode_std));
    add("data.points_per_device",
        DG_INT("data.points_per_device", data.points_per_device));
    add("timing.device_step_s",
        DG_DOUBLE("timing.device_step_s", timing.device_step_s));
    add("timing.server_step_s",
        DG_DOUBLE("timing.server_step_s", timing.server_step_s));
    add("run.master_seed", DG_U64("run.master_seed", run.master_seed));
    add("run.max_rounds", DG_INT("run.max_rounds", run.max_rounds));
    add("run.eval_every", DG_INT("run.eval_every", run.eval_every));
    add("run.target_metric", DG_DOUBLE("run.target_metric", run.target_metric));
    add("run.p_fail", DG_DOUBLE("run.p_fail", run.p_fail));
    add("run.workers", DG_INT("run.workers", run.workers));
    add("run.eval_samples", DG_INT("run.eval_samples", run.eval_samples));
    add("run.coverage_radius",
        DG_DOUBLE("run.coverage_radius", run.coverage_radius));
    add("output.dir", DG_STR(output_dir));

#undef DG_STR
#undef DG_DOUBLE
#undef DG_INT
#undef DG_U64
#undef DG_ILIST
    return f;
  }();
  return fields;
}

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void ExperimentConfig::validate() const {
  check(framework == "proposed_parallel" || framework == "proposed_serial" ||
            framework == "fedgan" || framework == "centralized",
        "framework = " + framework +
            ": must be one of proposed_parallel, proposed_serial, fedgan, "
            "centralized");
  check(num_devices >= 1, "num_devices = " + std::to_string(num_devices) +
                              ": must be >= 1");
  check(scheduler.policy == "all" || scheduler.policy == "round_robin" ||
            scheduler.policy == "best_channel" ||
            scheduler.policy == "proportional_fair",
        "scheduler.policy = " + scheduler.policy +
            ": must be one of all, round_robin, best_channel, proportional_fair");
  check(scheduler.ratio > 0.0 && scheduler.ratio <= 1.0,
        "scheduler.ratio = " + format_double(scheduler.ratio) +
            ": must be in (0, 1]");
  check(scheduler.pf_beta > 0.0 && scheduler.pf_beta < 1.0,
        "scheduler.pf_beta: must be in (0, 1)");
  network.validate();
  check(model.noise_dim >= 1, "model.noise_dim: must be >= 1");
  for (int h : model.gen_hidden)
    check(h >= 1, "model.gen_hidden: sizes must be >= 1");
  for (int h : model.disc_hidden)
    check(h >= 1, "model.disc_hidden: sizes must be >= 1");
  check(model.leaky_slope > 0.0 && model.leaky_slope < 1.0,
        "model.leaky_slope: must be in (0, 1)");
  check(hyper.n_d >= 1, "hyper.n_d: must be >= 1");
  check(hyper.n_g >= 1, "hyper.n_g: must be >= 1");
  check(hyper.eta_d >= 0.0, "hyper.eta_d: must be >= 0");
  check(hyper.eta_g >= 0.0, "hyper.eta_g: must be >= 0");
  check(hyper.m_k >= 1, "hyper.m_k: must be >= 1");
  check(hyper.batch_M >= 1, "hyper.M: must be >= 1");
  check(data.num_modes >= 1, "data.num_modes: must be >= 1");
  check(data.ring_radius > 0.0, "data.ring_radius: must be > 0");
  check(data.mode_std > 0.0, "data.mode_std: must be > 0");
  check(data.points_per_device >= 1, "data.points_per_device: must be >= 1");
  check(timing.device_step_s >= 0.0, "timing.device_step_s: must be >= 0");
  check(timing.server_step_s >= 0.0, "timing.server_step_s: must be >= 0");
  check(run.max_rounds >= 0, "run.max_rounds: must be >= 0");
  check(run.eval_every >= 1, "run.eval_every: must be >= 1");
  check(run.p_fail >= 0.0 && run.p_fail < 1.0, "run.p_fail: must be in [0, 1)");
  check(run.workers >= 1, "run.workers: must be >= 1");
  check(run.eval_samples >= 3, "run.eval_samples: must be >= 3");
  check(run.coverage_radius > 0.0, "run.coverage_radius: must be > 0");
  // the model must be a valid GAN
  gan_spec().validate();
}

GanSpec ExperimentConfig::gan_spec() const {
  GanSpec spec;
  spec.noise_dim = model.noise_dim;
  spec.generator.layer_sizes.push_back(model.noise_dim);
  for (int h : model.gen_hidden) spec.generator.layer_sizes.push_back(h);
  spec.generator.layer_sizes.push_back(2);
  spec.generator.hidden = parse_act(model.gen_hidden_act);
  spec.generator.output = Act::identity;
  spec.generator.leaky_slope = model.leaky_slope;
  spec.discriminator.layer_sizes.push_back(2);
  for (int h : model.disc_hidden) spec.discriminator.layer_sizes.push_back(h);
  spec.discriminator.layer_sizes.push_back(1);
  spec.discriminator.hidden = parse_act(model.disc_hidden_act);
  spec.discriminator.output = Act::sigmoid;
  spec.discriminator.leaky_slope = model.leaky_slope;
  return spec;
}

MixtureSpec ExperimentConfig::mixture() const {
  return ring_mixture(data.num_modes, data.ring_radius, data.mode_std);
}

void set_config_field(ExperimentConfig& cfg, std::string_view key,
                      std::string_view value) {
  for (const auto& f : registry()) {
    if (f.name == key) {
      f.set(cfg, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key: " + std::string(key));
}

std::vector<std::string> config_field_names() {
  std::vector<std::string> names;
  for (const auto& f : registry()) names.push_back(f.name);
  return names;
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t");
      const auto y = s.find_last_not_of(" \t");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    set_config_field(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& f : registry()) {
    out += f.name;
    out += " = ";
    out += f.get(cfg);
    out += "\n";
  }
  return out;
}

void apply_env_overrides(ExperimentConfig& cfg) {
  if (const char* seed = std::getenv("DGAN_SEED")) {
    cfg.run.master_seed = parse_u64("DGAN_SEED", seed);
  }
}

}  // namespace dgansim
