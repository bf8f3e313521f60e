#include "wigqdd/config.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <numbers>
#include <set>
#include <sstream>

#include "wigqdd/errors.h"

namespace wigqdd {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const char* where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("key '") + key + "': " + e.what());
  }
}

Potential parse_potential(const json& j) {
  const std::string kind = get_or<std::string>(j, "kind", "zero");
  Potential pot = Potential::zero();
  if (kind == "zero") {
    reject_unknown(j, "potential", {"kind", "offset"});
  } else if (kind == "linear") {
    reject_unknown(j, "potential", {"kind", "e0", "offset"});
    pot = Potential::linear(get_or(j, "e0", 1.0));
  } else if (kind == "harmonic") {
    reject_unknown(j, "potential", {"kind", "omega", "offset"});
    pot = Potential::harmonic(get_or(j, "omega", 1.0));
  } else if (kind == "gaussian_bump") {
    reject_unknown(j, "potential", {"kind", "amplitude", "sigma", "center", "offset"});
    pot = Potential::gaussian_bump(get_or(j, "amplitude", 0.1), get_or(j, "sigma", 0.5),
                                   get_or(j, "center", 0.0));
  } else if (kind == "cosine") {
    reject_unknown(j, "potential", {"kind", "amplitude", "k0", "offset"});
    pot = Potential::cosine(get_or(j, "amplitude", 0.1), get_or(j, "k0", 1.0));
  } else {
    throw ConfigError("potential: unknown kind '" + kind + "'");
  }
  return pot.with_offset(get_or(j, "offset", 0.0));
}

DensitySpec parse_density(const json& j) {
  reject_unknown(j, "initial.density", {"kind", "mean", "amplitude", "mode", "width", "center"});
  DensitySpec d;
  const std::string kind = get_or<std::string>(j, "kind", "cosine");
  if (kind == "constant") {
    d.kind = DensitySpec::Kind::constant;
  } else if (kind == "cosine") {
    d.kind = DensitySpec::Kind::cosine;
  } else if (kind == "gaussian") {
    d.kind = DensitySpec::Kind::gaussian;
  } else {
    throw ConfigError("initial.density: unknown kind '" + kind + "'");
  }
  d.mean = get_or(j, "mean", d.mean);
  d.amplitude = get_or(j, "amplitude", d.amplitude);
  d.mode = get_or(j, "mode", d.mode);
  d.width = get_or(j, "width", d.width);
  d.center = get_or(j, "center", d.center);
  return d;
}

FluctuationSpec parse_fluctuation(const json& j) {
  reject_unknown(j, "initial.fluctuation", {"kind", "amplitude", "mode"});
  FluctuationSpec f;
  const std::string kind = get_or<std::string>(j, "kind", "none");
  if (kind == "none") {
    f.kind = FluctuationSpec::Kind::none;
  } else if (kind == "odd") {
    f.kind = FluctuationSpec::Kind::odd;
  } else if (kind == "even") {
    f.kind = FluctuationSpec::Kind::even;
  } else {
    throw ConfigError("initial.fluctuation: unknown kind '" + kind + "'");
  }
  f.amplitude = get_or(j, "amplitude", f.amplitude);
  f.mode = get_or(j, "mode", f.mode);
  return f;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "config",
                 {"params", "grid", "potential", "initial", "time", "eps_list", "norm_k",
                  "kinetic"});
  ExperimentConfig cfg;
  cfg.source = root.dump();

  const json params = root.value("params", json::object());
  reject_unknown(params, "params", {"hbar", "m", "beta", "nu", "eps"});
  cfg.params.hbar = get_or(params, "hbar", 1.0);
  cfg.params.m = get_or(params, "m", 1.0);
  cfg.params.beta = get_or(params, "beta", 1.0);
  cfg.params.nu = get_or(params, "nu", 1.0);
  cfg.params.eps = get_or(params, "eps", 0.1);

  const json grid = root.value("grid", json::object());
  reject_unknown(grid, "grid", {"n_x", "n_v", "length", "v_max"});
  cfg.n_x = get_or<std::size_t>(grid, "n_x", cfg.n_x);
  cfg.n_v = get_or<std::size_t>(grid, "n_v", cfg.n_v);
  cfg.length = get_or(grid, "length", 2.0 * std::numbers::pi);
  cfg.v_max = get_or(grid, "v_max", cfg.v_max);

  cfg.potential = parse_potential(root.value("potential", json::object()));

  const json initial = root.value("initial", json::object());
  reject_unknown(initial, "initial", {"density", "fluctuation"});
  cfg.density = parse_density(initial.value("density", json::object()));
  cfg.fluctuation = parse_fluctuation(initial.value("fluctuation", json::object()));

  const json time = root.value("time", json::object());
  reject_unknown(time, "time", {"t_final", "outputs", "dt", "qdd_dt", "qdd_refine"});
  cfg.t_final = get_or(time, "t_final", cfg.t_final);
  cfg.n_outputs = get_or<std::size_t>(time, "outputs", cfg.n_outputs);
  cfg.dt = get_or(time, "dt", cfg.dt);
  cfg.qdd_dt = get_or(time, "qdd_dt", cfg.qdd_dt);
  cfg.qdd_refine = get_or<std::size_t>(time, "qdd_refine", cfg.qdd_refine);

  cfg.eps_list = get_or(root, "eps_list", std::vector<double>{});
  cfg.norm_k = get_or(root, "norm_k", cfg.norm_k);

  const json kinetic = root.value("kinetic", json::object());
  reject_unknown(kinetic, "kinetic", {"density_only"});
  cfg.density_only = get_or(kinetic, "density_only", false);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void ExperimentConfig::validate() const {
  params.validate();
  if (!is_power_of_two(n_x) || !is_power_of_two(n_v)) {
    throw ConfigError("grid sizes n_x and n_v must be powers of two");
  }
  (void)phase_grid();
  NormSpec{norm_k}.validate();
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be positive");
  if (n_outputs == 0) throw ConfigError("time.outputs must be at least 1");
  if (!(dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (qdd_dt < 0.0) throw ConfigError("time.qdd_dt must be nonnegative");
  if (qdd_refine == 0 || !is_power_of_two(qdd_refine)) {
    throw ConfigError("time.qdd_refine must be a power of two");
  }
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    const double e = eps_list[k];
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("eps_list entries must lie in (0, 1)");
    if (k > 0 && !(e < eps_list[k - 1])) {
      throw ConfigError("eps_list must be strictly decreasing");
    }
  }
  if (density.kind == DensitySpec::Kind::gaussian && !(density.width > 0.0)) {
    throw ConfigError("initial.density.width must be positive");
  }
}

SpaceGrid ExperimentConfig::space_grid() const { return SpaceGrid(n_x, length); }

PhaseGrid ExperimentConfig::phase_grid() const { return PhaseGrid(space_grid(), n_v, v_max); }

std::vector<double> ExperimentConfig::output_times() const {
  std::vector<double> t(n_outputs + 1);
  for (std::size_t k = 0; k <= n_outputs; ++k) {
    t[k] = t_final * static_cast<double>(k) / static_cast<double>(n_outputs);
  }
  return t;
}

double ExperimentConfig::qdd_step() const {
  if (qdd_dt > 0.0) return qdd_dt;
  return potential.kind() == PotentialKind::zero ? dt : 0.0;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(source); }

DensityField initial_density(const ExperimentConfig& cfg, const SpaceGrid& grid) {
  DensityField n(grid);
  const DensitySpec& d = cfg.density;
  const double k = 2.0 * std::numbers::pi * d.mode / grid.length();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    double shape = 0.0;
    switch (d.kind) {
      case DensitySpec::Kind::constant:
        break;
      case DensitySpec::Kind::cosine:
        shape = std::cos(k * x);
        break;
      case DensitySpec::Kind::gaussian: {
        const double s = (x - d.center) / d.width;
        shape = std::exp(-0.5 * s * s);
        break;
      }
    }
    n[i] = d.mean + d.amplitude * shape;
  }
  return n;
}

WignerField initial_datum(const ExperimentConfig& cfg, const KernelM& M) {
  const PhaseGrid& grid = M.values.grid();
  const DensityField n0 = initial_density(cfg, grid.space());
  WignerField w = M.values;
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    for (double& v : w.row(i)) v *= n0[i];
  }
  const FluctuationSpec& f = cfg.fluctuation;
  if (f.kind == FluctuationSpec::Kind::none || f.amplitude == 0.0) return w;
  const std::vector<double> F = maxwellian(cfg.params, grid);
  const double bm = cfg.params.beta * cfg.params.m;
  const double k = 2.0 * std::numbers::pi * f.mode / grid.space().length();
  auto v = grid.v_points();
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    const double x = grid.space().point(i);
    auto r = w.row(i);
    for (std::size_t j = 0; j < grid.n_v(); ++j) {
      r[j] += f.kind == FluctuationSpec::Kind::odd
                  ? f.amplitude * std::sin(k * x) * v[j] * F[j]
                  : f.amplitude * std::cos(k * x) * (1.0 - bm * v[j] * v[j]) * F[j];
    }
  }
  return w;
}

}  // namespace wigqdd
