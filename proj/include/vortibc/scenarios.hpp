#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "vortibc/field.hpp"

namespace vortibc {

// Uniform doubles built from raw mt19937_64 output, so sequences are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

ScalarField sample(const GridPtr& g, const std::function<double(double, double)>& f);
VectorField sample(const GridPtr& g, const std::function<Vec2(double, double)>& f);

// Named initial velocity fields.
//   zero
//   circulation      param * e_theta / r            (polar grids)
//   rigid_rotation   param * (-y, x)
//   taylor_green     param * (sin x cos y, -cos x sin y), wavenumbers
//                    scaled to the periodic lengths
//   shear_layer      param * tanh((r - r_mid) / width) e_theta  (polar grids)
VectorField initial_condition(const std::string& name, const GridPtr& g, double param);
bool is_initial_condition(const std::string& name);

// Analytic Taylor-Green decay rate mu * (k1^2 + k2^2) for the grid's lengths.
double taylor_green_rate(const Grid& g, double mu);

// Named boundary vorticity data a(t) on a frame.
//   zero
//   constant          param
//   sine              param * sin(theta)  (polar) or sin(2 pi x / L) (channel)
//   compatible        boundary trace of curl2d(u0)
//   compatible_plus   compatible + param
// time_amp != 0 multiplies by (1 + time_amp * sin(t)).
using BoundaryData = std::function<BoundaryScalars(double)>;
BoundaryData boundary_data(const std::string& name, const BoundaryFrame& frame, const VectorField& u0,
                           double param, double time_amp = 0.0);
bool is_boundary_data(const std::string& name);

// Smooth field with random Fourier content; no boundary conditions imposed.
VectorField random_smooth_field(const GridPtr& g, std::uint64_t seed);
// Smooth divergence-free field from a random stream function.
VectorField random_divfree_field(const GridPtr& g, std::uint64_t seed);
// Smooth field with u_n = 0 and vanishing vorticity on the walls
// (Annulus, Disk, Channel).
VectorField random_absolute_field(const GridPtr& g, std::uint64_t seed);

}  // namespace vortibc
