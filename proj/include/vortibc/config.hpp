#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortibc/fixedpoint.hpp"
#include "vortibc/geometry.hpp"
#include "vortibc/stokes.hpp"

namespace vortibc {

// Flat text configuration: one "key = value" per line, "#" starts a comment,
// dotted section prefixes (domain., physics., solver., output.).  Lists are
// comma separated.  Unknown or repeated keys are errors.
struct RunConfig {
  // domain.
  DomainSpec domain;
  int n1 = 32;
  int n2 = 32;
  // physics.
  double mu = 0.1;
  double T = 1.0;
  double dt = 0.0;  // 0 selects the solver default
  std::string initial = "zero";
  double initial_param = 1.0;
  std::string boundary = "zero";
  double boundary_param = 0.0;
  double boundary_time_amp = 0.0;
  std::vector<double> mu_list;  // sweep only
  // solver.
  TimeScheme scheme = TimeScheme::BackwardEuler;
  double tol_fix = 1e-8;
  int max_iter = 40;
  int contraction_window = 2;
  int verify_levels = 3;  // resolutions n, 2n, 4n, ...
  // output.
  std::string directory = "out";
  int checkpoint_stride = 0;  // 0 writes only the final state
  std::uint64_t seed = 1;     // random initial fields

  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError naming the line on malformed input.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Every key, with doubles in round-trip precision.
std::string serialize_config(const RunConfig& cfg);
// Range and name checks; throws ConfigError.
void validate(const RunConfig& cfg);

// Names accepted for physics.initial beyond the built-in scenarios:
// random_smooth, random_divfree, random_absolute (seeded, scaled to peak
// speed initial_param).
bool is_config_initial(const std::string& name);

// Grid, frame, initial field and boundary data built from a config.
GridPtr make_grid(const RunConfig& cfg);
VectorField make_initial(const RunConfig& cfg, const GridPtr& g);
BoundaryData make_boundary(const RunConfig& cfg, const GridPtr& g, const VectorField& u0);
StokesRun make_stokes_run(const RunConfig& cfg);
PicardConfig make_picard(const RunConfig& cfg);

}  // namespace vortibc
