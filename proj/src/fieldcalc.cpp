#include "vortibc/fieldcalc.hpp"

#include <algorithm>
#include <cmath>

namespace vortibc {

namespace {

// Derivative along a line of n samples with stride; periodic or walled.
void line_d1(const double* f, double* out, int n, int stride, double h, bool periodic) {
  const double c = 0.5 / h;
  if (periodic) {
    for (int m = 0; m < n; ++m) {
      const int p = (m + 1) % n, q = (m + n - 1) % n;
      out[m * stride] = c * (f[p * stride] - f[q * stride]);
    }
    return;
  }
  // Written in differences so constants give exact zeros.
  out[0] = c * (4.0 * (f[stride] - f[0]) - (f[2 * stride] - f[0]));
  for (int m = 1; m < n - 1; ++m) out[m * stride] = c * (f[(m + 1) * stride] - f[(m - 1) * stride]);
  const int e = n - 1;
  out[e * stride] = c * (-4.0 * (f[(e - 1) * stride] - f[e * stride]) + (f[(e - 2) * stride] - f[e * stride]));
}

void line_d2(const double* f, double* out, int n, int stride, double h, bool periodic) {
  const double c = 1.0 / (h * h);
  if (periodic) {
    for (int m = 0; m < n; ++m) {
      const int p = (m + 1) % n, q = (m + n - 1) % n;
      out[m * stride] = c * ((f[p * stride] - f[m * stride]) + (f[q * stride] - f[m * stride]));
    }
    return;
  }
  out[0] = c * (-5.0 * (f[stride] - f[0]) + 4.0 * (f[2 * stride] - f[0]) - (f[3 * stride] - f[0]));
  for (int m = 1; m < n - 1; ++m)
    out[m * stride] = c * ((f[(m + 1) * stride] - f[m * stride]) + (f[(m - 1) * stride] - f[m * stride]));
  const int e = n - 1;
  out[e * stride] = c * (-5.0 * (f[(e - 1) * stride] - f[e * stride]) +
                         4.0 * (f[(e - 2) * stride] - f[e * stride]) - (f[(e - 3) * stride] - f[e * stride]));
}

std::vector<double> along1(const Grid& g, const std::vector<double>& f, bool second) {
  std::vector<double> out(f.size());
  for (int j = 0; j < g.n2; ++j) {
    if (second)
      line_d2(f.data() + j, out.data() + j, g.n1, g.n2, g.h1, g.periodic1);
    else
      line_d1(f.data() + j, out.data() + j, g.n1, g.n2, g.h1, g.periodic1);
  }
  return out;
}

std::vector<double> along2(const Grid& g, const std::vector<double>& f, bool second) {
  std::vector<double> out(f.size());
  for (int i = 0; i < g.n1; ++i) {
    const int o = i * g.n2;
    if (second)
      line_d2(f.data() + o, out.data() + o, g.n2, 1, g.h2, g.periodic2);
    else
      line_d1(f.data() + o, out.data() + o, g.n2, 1, g.h2, g.periodic2);
  }
  return out;
}

double weighted_sum_sq(const Grid& g, const std::vector<double>& a) {
  double s = 0.0;
  for (int k = 0; k < g.size(); ++k) s += g.weight[k] * a[k] * a[k];
  return s;
}

}  // namespace

std::vector<double> d_xi1(const Grid& g, const std::vector<double>& f) { return along1(g, f, false); }
std::vector<double> d_xi2(const Grid& g, const std::vector<double>& f) { return along2(g, f, false); }
std::vector<double> d2_xi1(const Grid& g, const std::vector<double>& f) { return along1(g, f, true); }
std::vector<double> d2_xi2(const Grid& g, const std::vector<double>& f) { return along2(g, f, true); }

std::vector<double> d_xi12(const Grid& g, const std::vector<double>& f) {
  if (g.bounded_axis() == 1) return d_xi2(g, d_xi1(g, f));
  return d_xi1(g, d_xi2(g, f));
}

void to_frame(const VectorField& u, std::vector<double>& u1, std::vector<double>& u2) {
  const Grid& g = *u.grid;
  u1.resize(g.size());
  u2.resize(g.size());
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      const Vec2 a = u.at(k);
      u1[k] = dot(a, g.e1(j));
      u2[k] = dot(a, g.e2(j));
    }
}

VectorField from_frame(const GridPtr& gp, const std::vector<double>& u1, const std::vector<double>& u2) {
  const Grid& g = *gp;
  VectorField u(gp);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      u.set(k, u1[k] * g.e1(j) + u2[k] * g.e2(j));
    }
  return u;
}

VectorField grad(const ScalarField& f) {
  const Grid& g = *f.grid;
  std::vector<double> g1 = d_xi1(g, f.v);
  std::vector<double> g2 = d_xi2(g, f.v);
  for (int i = 0; i < g.n1; ++i) {
    const double inv = 1.0 / g.scale(i);
    for (int j = 0; j < g.n2; ++j) g2[g.index(i, j)] *= inv;
  }
  return from_frame(f.grid, g1, g2);
}

ScalarField div(const VectorField& u) {
  const Grid& g = *u.grid;
  std::vector<double> u1, u2;
  to_frame(u, u1, u2);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) u1[g.index(i, j)] *= g.scale(i);
  const std::vector<double> a = d_xi1(g, u1);
  const std::vector<double> b = d_xi2(g, u2);
  ScalarField d(u.grid);
  for (int i = 0; i < g.n1; ++i) {
    const double inv = 1.0 / g.scale(i);
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      d[k] = inv * (a[k] + b[k]);
    }
  }
  return d;
}

ScalarField curl2d(const VectorField& u) {
  const Grid& g = *u.grid;
  std::vector<double> u1, u2;
  to_frame(u, u1, u2);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) u2[g.index(i, j)] *= g.scale(i);
  const std::vector<double> a = d_xi1(g, u2);
  const std::vector<double> b = d_xi2(g, u1);
  ScalarField w(u.grid);
  for (int i = 0; i < g.n1; ++i) {
    const double inv = 1.0 / g.scale(i);
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      w[k] = inv * (a[k] - b[k]);
    }
  }
  return w;
}

VectorField curl_scalar(const ScalarField& w) {
  const Grid& g = *w.grid;
  std::vector<double> a = d_xi2(g, w.v);
  std::vector<double> b = d_xi1(g, w.v);
  for (int i = 0; i < g.n1; ++i) {
    const double inv = 1.0 / g.scale(i);
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      a[k] *= inv;
      b[k] = -b[k];
    }
  }
  return from_frame(w.grid, a, b);
}

Hessian hessian(const ScalarField& f) {
  const Grid& g = *f.grid;
  const double rs = g.scale_slope();
  const std::vector<double> f1 = d_xi1(g, f.v);
  const std::vector<double> f2 = d_xi2(g, f.v);
  const std::vector<double> f11 = d2_xi1(g, f.v);
  const std::vector<double> f22 = d2_xi2(g, f.v);
  const std::vector<double> f12 = d_xi12(g, f.v);
  Hessian H{ScalarField(f.grid), ScalarField(f.grid), ScalarField(f.grid)};
  for (int i = 0; i < g.n1; ++i) {
    const double R = g.scale(i);
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      // Frame components of the covariant Hessian.
      const double a = f11[k];
      const double b = f12[k] / R - rs * f2[k] / (R * R);
      const double c = f22[k] / (R * R) + rs * f1[k] / R;
      const Vec2 e1 = g.e1(j), e2 = g.e2(j);
      H.xx[k] = a * e1.x * e1.x + 2.0 * b * e1.x * e2.x + c * e2.x * e2.x;
      H.xy[k] = a * e1.x * e1.y + b * (e1.x * e2.y + e2.x * e1.y) + c * e2.x * e2.y;
      H.yy[k] = a * e1.y * e1.y + 2.0 * b * e1.y * e2.y + c * e2.y * e2.y;
    }
  }
  return H;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = *f.grid;
  const double rs = g.scale_slope();
  const std::vector<double> f1 = d_xi1(g, f.v);
  const std::vector<double> f11 = d2_xi1(g, f.v);
  const std::vector<double> f22 = d2_xi2(g, f.v);
  ScalarField out(f.grid);
  for (int i = 0; i < g.n1; ++i) {
    const double R = g.scale(i);
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      out[k] = f11[k] + rs * f1[k] / R + f22[k] / (R * R);
    }
  }
  return out;
}

VectorField laplacian(const VectorField& u) {
  ScalarField a(u.grid), b(u.grid);
  a.v = u.x;
  b.v = u.y;
  VectorField out(u.grid);
  out.x = laplacian(a).v;
  out.y = laplacian(b).v;
  return out;
}

VectorField advect(const VectorField& X, const VectorField& Y) {
  ScalarField a(Y.grid), b(Y.grid);
  a.v = Y.x;
  b.v = Y.y;
  const VectorField ga = grad(a), gb = grad(b);
  VectorField out(Y.grid);
  for (int k = 0; k < out.size(); ++k) {
    out.x[k] = X.x[k] * ga.x[k] + X.y[k] * ga.y[k];
    out.y[k] = X.x[k] * gb.x[k] + X.y[k] * gb.y[k];
  }
  return out;
}

BoundaryScalars trace(const ScalarField& f, const BoundaryFrame& frame) {
  BoundaryScalars out(frame.size());
  for (int k = 0; k < frame.size(); ++k) out[k] = f[frame.nodes[k].node];
  return out;
}

BoundaryVectors trace(const VectorField& u, const BoundaryFrame& frame) {
  BoundaryVectors out(frame.size());
  for (int k = 0; k < frame.size(); ++k) out[k] = u.at(frame.nodes[k].node);
  return out;
}

BoundaryScalars normal_component(const VectorField& u, const BoundaryFrame& frame) {
  BoundaryScalars out(frame.size());
  for (int k = 0; k < frame.size(); ++k) out[k] = dot(u.at(frame.nodes[k].node), frame.nodes[k].nu);
  return out;
}

BoundaryScalars tangential_part(const VectorField& u, const BoundaryFrame& frame) {
  BoundaryScalars out(frame.size());
  for (int k = 0; k < frame.size(); ++k) out[k] = dot(u.at(frame.nodes[k].node), frame.nodes[k].tau);
  return out;
}

BoundaryScalars surface_curl(const BoundaryScalars& a, const BoundaryFrame& frame) {
  BoundaryScalars out(frame.size());
  for (const BoundaryComponent& c : frame.components) {
    const double s = c.sense * 0.5 / c.ds;
    for (int m = 0; m < c.count; ++m) {
      const int p = c.begin + (m + 1) % c.count;
      const int q = c.begin + (m + c.count - 1) % c.count;
      out[c.begin + m] = s * (a[p] - a[q]);
    }
  }
  return out;
}

BoundaryScalars normal_derivative(const ScalarField& f, const BoundaryFrame& frame) {
  return normal_component(grad(f), frame);
}

double integrate(const ScalarField& f) {
  const Grid& g = *f.grid;
  double s = 0.0;
  for (int k = 0; k < g.size(); ++k) s += g.weight[k] * f[k];
  return s;
}

double mean(const ScalarField& f) { return integrate(f) / f.grid->area(); }

double dot_l2(const VectorField& a, const VectorField& b) {
  const Grid& g = *a.grid;
  double s = 0.0;
  for (int k = 0; k < g.size(); ++k) s += g.weight[k] * (a.x[k] * b.x[k] + a.y[k] * b.y[k]);
  return s;
}

double l2(const ScalarField& f) { return std::sqrt(weighted_sum_sq(*f.grid, f.v)); }

double l2(const VectorField& u) {
  return std::sqrt(weighted_sum_sq(*u.grid, u.x) + weighted_sum_sq(*u.grid, u.y));
}

namespace {

double grad_sq(const ScalarField& f) {
  const VectorField gf = grad(f);
  return weighted_sum_sq(*f.grid, gf.x) + weighted_sum_sq(*f.grid, gf.y);
}

double hess_sq(const ScalarField& f) {
  const Hessian H = hessian(f);
  const Grid& g = *f.grid;
  return weighted_sum_sq(g, H.xx.v) + 2.0 * weighted_sum_sq(g, H.xy.v) + weighted_sum_sq(g, H.yy.v);
}

ScalarField component(const VectorField& u, int c) {
  ScalarField f(u.grid);
  f.v = c == 0 ? u.x : u.y;
  return f;
}

}  // namespace

double grad_sq(const VectorField& u) { return grad_sq(component(u, 0)) + grad_sq(component(u, 1)); }
double hess_sq(const VectorField& u) { return hess_sq(component(u, 0)) + hess_sq(component(u, 1)); }

double h1(const ScalarField& f) { return std::sqrt(weighted_sum_sq(*f.grid, f.v) + grad_sq(f)); }
double h1(const VectorField& u) {
  const double a = l2(u);
  return std::sqrt(a * a + grad_sq(u));
}

double h2(const ScalarField& f) {
  return std::sqrt(weighted_sum_sq(*f.grid, f.v) + grad_sq(f) + hess_sq(f));
}

double h2(const VectorField& u) {
  const double a = l2(u);
  return std::sqrt(a * a + grad_sq(u) + hess_sq(u));
}

double n_norm(const VectorField& v, const VectorField* v_t) {
  if (v_t == nullptr) throw Error(ErrorCode::MissingTimeDerivative, "n_norm needs v_t");
  const double a = h2(v), b = h1(*v_t);
  return std::sqrt(a * a + b * b);
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const VectorField& u) { return std::max(max_abs(u.x), max_abs(u.y)); }

double max_speed(const VectorField& u) {
  double m = 0.0;
  for (int k = 0; k < u.size(); ++k) m = std::max(m, std::hypot(u.x[k], u.y[k]));
  return m;
}

}  // namespace vortibc
