#include "vortibc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace vortibc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end || !std::isfinite(x)) throw std::invalid_argument("expected a number");
  return x;
}

template <class Int>
Int to_int(const std::string& v) {
  Int x = 0;
  const char* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw std::invalid_argument("expected an integer");
  return x;
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  return out;
}

std::string from_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + fmt(v[k]);
  return s;
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Key number(const std::string& name, T RunConfig::*field) {
  if constexpr (std::is_floating_point_v<T>)
    return {name, [field](RunConfig& c, const std::string& v) { c.*field = to_double(v); },
            [field](const RunConfig& c) { return fmt(c.*field); }};
  else
    return {name, [field](RunConfig& c, const std::string& v) { c.*field = to_int<T>(v); },
            [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

Key text(const std::string& name, std::string RunConfig::*field) {
  return {name, [field](RunConfig& c, const std::string& v) { c.*field = v; },
          [field](const RunConfig& c) { return c.*field; }};
}

Key domain_number(const std::string& name, double DomainSpec::*field) {
  return {name, [field](RunConfig& c, const std::string& v) { c.domain.*field = to_double(v); },
          [field](const RunConfig& c) { return fmt(c.domain.*field); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"domain.kind", [](RunConfig& c, const std::string& v) { c.domain.kind = domain_kind_from_string(v); },
       [](const RunConfig& c) { return std::string(to_string(c.domain.kind)); }},
      domain_number("domain.r_inner", &DomainSpec::r_inner),
      domain_number("domain.r_outer", &DomainSpec::r_outer),
      domain_number("domain.length_x", &DomainSpec::length_x),
      domain_number("domain.length_y", &DomainSpec::length_y),
      number("domain.n1", &RunConfig::n1),
      number("domain.n2", &RunConfig::n2),
      number("physics.mu", &RunConfig::mu),
      number("physics.T", &RunConfig::T),
      number("physics.dt", &RunConfig::dt),
      text("physics.initial", &RunConfig::initial),
      number("physics.initial_param", &RunConfig::initial_param),
      text("physics.boundary", &RunConfig::boundary),
      number("physics.boundary_param", &RunConfig::boundary_param),
      number("physics.boundary_time_amp", &RunConfig::boundary_time_amp),
      {"physics.mu_list", [](RunConfig& c, const std::string& v) { c.mu_list = to_list(v); },
       [](const RunConfig& c) { return from_list(c.mu_list); }},
      {"solver.scheme",
       [](RunConfig& c, const std::string& v) {
         if (v == "backward_euler")
           c.scheme = TimeScheme::BackwardEuler;
         else if (v == "crank_nicolson")
           c.scheme = TimeScheme::CrankNicolson;
         else
           throw std::invalid_argument("expected backward_euler or crank_nicolson");
       },
       [](const RunConfig& c) {
         return std::string(c.scheme == TimeScheme::BackwardEuler ? "backward_euler" : "crank_nicolson");
       }},
      number("solver.tol_fix", &RunConfig::tol_fix),
      number("solver.max_iter", &RunConfig::max_iter),
      number("solver.contraction_window", &RunConfig::contraction_window),
      number("solver.verify_levels", &RunConfig::verify_levels),
      text("output.directory", &RunConfig::directory),
      number("output.checkpoint_stride", &RunConfig::checkpoint_stride),
      number("output.seed", &RunConfig::seed),
  };
  return k;
}

void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

}  // namespace

bool is_config_initial(const std::string& name) {
  return is_initial_condition(name) || name == "random_smooth" || name == "random_divfree" ||
         name == "random_absolute";
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    const std::string where = "line " + std::to_string(no) + ": ";
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const auto it = std::find_if(keys().begin(), keys().end(), [&](const Key& k) { return k.name == key; });
    if (it == keys().end()) fail(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) fail(where + "repeated key '" + key + "'");
    try {
      it->set(cfg, value);
    } catch (const std::exception& e) {
      fail(where + key + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const Key& k : keys()) out += k.name + " = " + k.get(cfg) + "\n";
  return out;
}

void validate(const RunConfig& cfg) {
  const DomainSpec& d = cfg.domain;
  if (d.kind == DomainKind::Annulus && !(d.r_inner > 0.0 && d.r_outer > d.r_inner))
    fail("annulus needs 0 < r_inner < r_outer");
  if (d.kind == DomainKind::Disk && !(d.r_outer > 0.0)) fail("disk needs r_outer > 0");
  if ((d.kind == DomainKind::Channel || d.kind == DomainKind::Torus) && !(d.length_x > 0.0 && d.length_y > 0.0))
    fail("lengths must be positive");
  if (cfg.n1 < 1 || cfg.n2 < 1) fail("n1 and n2 must be positive");
  if (!(cfg.mu > 0.0)) fail("physics.mu must be positive");
  if (!(cfg.T > 0.0)) fail("physics.T must be positive");
  if (cfg.dt < 0.0) fail("physics.dt must be non-negative");
  if (!is_config_initial(cfg.initial)) fail("unknown initial condition '" + cfg.initial + "'");
  if (!is_boundary_data(cfg.boundary)) fail("unknown boundary data '" + cfg.boundary + "'");
  for (std::size_t k = 0; k < cfg.mu_list.size(); ++k) {
    if (!(cfg.mu_list[k] > 0.0)) fail("physics.mu_list entries must be positive");
    if (k > 0 && !(cfg.mu_list[k] < cfg.mu_list[k - 1])) fail("physics.mu_list must be strictly decreasing");
  }
  if (!(cfg.tol_fix > 0.0)) fail("solver.tol_fix must be positive");
  if (cfg.max_iter < 2) fail("solver.max_iter must be at least 2");
  if (cfg.contraction_window < 1) fail("solver.contraction_window must be positive");
  if (cfg.verify_levels < 2 || cfg.verify_levels > 5) fail("solver.verify_levels must be between 2 and 5");
  if (cfg.directory.empty()) fail("output.directory is empty");
  if (cfg.checkpoint_stride < 0) fail("output.checkpoint_stride must be non-negative");
}

GridPtr make_grid(const RunConfig& cfg) { return build_grid(cfg.domain, cfg.n1, cfg.n2); }

VectorField make_initial(const RunConfig& cfg, const GridPtr& g) {
  VectorField u;
  if (cfg.initial == "random_smooth")
    u = random_smooth_field(g, cfg.seed);
  else if (cfg.initial == "random_divfree")
    u = random_divfree_field(g, cfg.seed);
  else if (cfg.initial == "random_absolute")
    u = random_absolute_field(g, cfg.seed);
  else
    return initial_condition(cfg.initial, g, cfg.initial_param);
  const double peak = max_speed(u);
  return peak > 0.0 ? (cfg.initial_param / peak) * u : u;
}

BoundaryData make_boundary(const RunConfig& cfg, const GridPtr& g, const VectorField& u0) {
  const FramePtr f = boundary_frame_or_null(g);
  if (!f) return {};
  return boundary_data(cfg.boundary, *f, u0, cfg.boundary_param, cfg.boundary_time_amp);
}

StokesRun make_stokes_run(const RunConfig& cfg) {
  StokesRun run;
  run.grid = make_grid(cfg);
  run.mu = cfg.mu;
  run.T = cfg.T;
  run.dt = cfg.dt;
  run.u0 = make_initial(cfg, run.grid);
  run.a = make_boundary(cfg, run.grid, run.u0);
  run.scheme = cfg.scheme;
  return run;
}

PicardConfig make_picard(const RunConfig& cfg) {
  PicardConfig p;
  p.tol_fix = cfg.tol_fix;
  p.max_iter = cfg.max_iter;
  p.contraction_window = cfg.contraction_window;
  return p;
}

}  // namespace vortibc
