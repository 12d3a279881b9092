#pragma once

#include <cstddef>
#include <vector>

#include "vortibc/geometry.hpp"

namespace vortibc {

struct ScalarField {
  GridPtr grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(GridPtr g, double value = 0.0) : grid(std::move(g)), v(grid->size(), value) {}
  int size() const { return static_cast<int>(v.size()); }
  double& operator[](int k) { return v[k]; }
  double operator[](int k) const { return v[k]; }
};

// Cartesian components per node.
struct VectorField {
  GridPtr grid;
  std::vector<double> x, y;

  VectorField() = default;
  explicit VectorField(GridPtr g) : grid(std::move(g)), x(grid->size(), 0.0), y(grid->size(), 0.0) {}
  int size() const { return static_cast<int>(x.size()); }
  Vec2 at(int k) const { return {x[k], y[k]}; }
  void set(int k, Vec2 a) {
    x[k] = a.x;
    y[k] = a.y;
  }
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
// a += s * b
void axpy(double s, const ScalarField& b, ScalarField& a);
void axpy(double s, const VectorField& b, VectorField& a);

bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& u);

// Uniformly spaced snapshots t_n = t0 + n dt.
template <class F>
struct FieldHistory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<F> snapshots;

  std::size_t size() const { return snapshots.size(); }
  double time(std::size_t n) const { return t0 + static_cast<double>(n) * dt; }
  const F& operator[](std::size_t n) const { return snapshots[n]; }
  F& operator[](std::size_t n) { return snapshots[n]; }

  // Second order: centered inside, one-sided three-point at the ends
  // (two-point when only two snapshots exist).
  F derivative(std::size_t n) const;
};

extern template struct FieldHistory<ScalarField>;
extern template struct FieldHistory<VectorField>;

using ScalarHistory = FieldHistory<ScalarField>;
using VectorHistory = FieldHistory<VectorField>;

}  // namespace vortibc
