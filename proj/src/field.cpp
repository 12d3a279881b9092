#include "vortibc/field.hpp"

#include <cmath>

namespace vortibc {

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  ScalarField r = a;
  axpy(1.0, b, r);
  return r;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  ScalarField r = a;
  axpy(-1.0, b, r);
  return r;
}

ScalarField operator*(double s, const ScalarField& a) {
  ScalarField r = a;
  for (double& x : r.v) x *= s;
  return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r = a;
  axpy(1.0, b, r);
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r = a;
  axpy(-1.0, b, r);
  return r;
}

VectorField operator*(double s, const VectorField& a) {
  VectorField r = a;
  for (double& x : r.x) x *= s;
  for (double& y : r.y) y *= s;
  return r;
}

void axpy(double s, const ScalarField& b, ScalarField& a) {
  for (int k = 0; k < a.size(); ++k) a.v[k] += s * b.v[k];
}

void axpy(double s, const VectorField& b, VectorField& a) {
  for (int k = 0; k < a.size(); ++k) {
    a.x[k] += s * b.x[k];
    a.y[k] += s * b.y[k];
  }
}

bool all_finite(const ScalarField& f) {
  for (double x : f.v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const VectorField& u) {
  for (int k = 0; k < u.size(); ++k)
    if (!std::isfinite(u.x[k]) || !std::isfinite(u.y[k])) return false;
  return true;
}

template <class F>
F FieldHistory<F>::derivative(std::size_t n) const {
  const std::size_t m = snapshots.size();
  if (m < 2) throw Error(ErrorCode::MissingTimeDerivative, "need at least two snapshots");
  const double inv = 1.0 / dt;
  if (m == 2) return inv * (snapshots[1] - snapshots[0]);
  if (n == 0) {
    F r = (-1.5 * inv) * snapshots[0];
    axpy(2.0 * inv, snapshots[1], r);
    axpy(-0.5 * inv, snapshots[2], r);
    return r;
  }
  if (n == m - 1) {
    F r = (1.5 * inv) * snapshots[m - 1];
    axpy(-2.0 * inv, snapshots[m - 2], r);
    axpy(0.5 * inv, snapshots[m - 3], r);
    return r;
  }
  return (0.5 * inv) * (snapshots[n + 1] - snapshots[n - 1]);
}

template struct FieldHistory<ScalarField>;
template struct FieldHistory<VectorField>;

}  // namespace vortibc
