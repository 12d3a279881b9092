#include "vortibc/scenarios.hpp"

#include <cmath>
#include <vector>

#include "vortibc/fieldcalc.hpp"

namespace vortibc {

namespace {

double wavenumber(double length) { return 2.0 * M_PI / length; }

void require_polar(const Grid& g, const std::string& name) {
  if (!g.polar) throw Error(ErrorCode::ConfigError, name + " needs an annulus or disk");
}

struct Mode {
  double kx, ky, phase, amp_x, amp_y;
};

// Wavenumbers along periodic axes are integer multiples of 2 pi / L.
std::vector<Mode> random_modes(const Grid& g, Rng& rng, int count) {
  std::vector<Mode> modes;
  const bool px = g.spec.kind == DomainKind::Channel || g.spec.kind == DomainKind::Torus;
  const bool py = g.spec.kind == DomainKind::Torus;
  for (int m = 0; m < count; ++m) {
    Mode d;
    d.kx = px ? rng.integer(-2, 2) * wavenumber(g.spec.length_x) : rng.uniform(-2.0, 2.0);
    d.ky = py ? rng.integer(-2, 2) * wavenumber(g.spec.length_y) : rng.uniform(-2.0, 2.0);
    d.phase = rng.uniform(0.0, 2.0 * M_PI);
    d.amp_x = rng.uniform(-1.0, 1.0);
    d.amp_y = rng.uniform(-1.0, 1.0);
    modes.push_back(d);
  }
  return modes;
}

// Random trigonometric polynomial of degree 3 in an angle-like variable.
struct Trig {
  double c[4], s[4];
  explicit Trig(Rng& rng) {
    for (int k = 0; k < 4; ++k) {
      c[k] = rng.uniform(-1.0, 1.0);
      s[k] = k == 0 ? 0.0 : rng.uniform(-1.0, 1.0);
    }
  }
  double operator()(double t) const {
    double r = 0.0;
    for (int k = 0; k < 4; ++k) r += c[k] * std::cos(k * t) + s[k] * std::sin(k * t);
    return r;
  }
};

}  // namespace

ScalarField sample(const GridPtr& g, const std::function<double(double, double)>& f) {
  ScalarField s(g);
  for (int i = 0; i < g->n1; ++i)
    for (int j = 0; j < g->n2; ++j) {
      const Vec2 p = g->position(i, j);
      s[g->index(i, j)] = f(p.x, p.y);
    }
  return s;
}

VectorField sample(const GridPtr& g, const std::function<Vec2(double, double)>& f) {
  VectorField u(g);
  for (int i = 0; i < g->n1; ++i)
    for (int j = 0; j < g->n2; ++j) {
      const Vec2 p = g->position(i, j);
      u.set(g->index(i, j), f(p.x, p.y));
    }
  return u;
}

bool is_initial_condition(const std::string& name) {
  return name == "zero" || name == "circulation" || name == "rigid_rotation" || name == "taylor_green" ||
         name == "shear_layer";
}

VectorField initial_condition(const std::string& name, const GridPtr& g, double param) {
  if (name == "zero") return VectorField(g);
  if (name == "circulation") {
    require_polar(*g, name);
    return sample(g, [param](double x, double y) {
      const double r2 = x * x + y * y;
      return Vec2{-param * y / r2, param * x / r2};
    });
  }
  if (name == "rigid_rotation") return sample(g, [param](double x, double y) { return Vec2{-param * y, param * x}; });
  if (name == "taylor_green") {
    const double k1 = wavenumber(g->spec.length_x), k2 = wavenumber(g->spec.length_y);
    return sample(g, [=](double x, double y) {
      return Vec2{param * k2 * std::sin(k1 * x) * std::cos(k2 * y), -param * k1 * std::cos(k1 * x) * std::sin(k2 * y)};
    });
  }
  if (name == "shear_layer") {
    require_polar(*g, name);
    const double a = g->xi1.front(), b = g->xi1.back();
    const double mid = 0.5 * (a + b), width = 0.15 * (b - a);
    return sample(g, [=](double x, double y) {
      const double r = std::hypot(x, y);
      const double s = param * std::tanh((r - mid) / width);
      return Vec2{-s * y / r, s * x / r};
    });
  }
  throw Error(ErrorCode::ConfigError, "unknown initial condition '" + name + "'");
}

double taylor_green_rate(const Grid& g, double mu) {
  const double k1 = wavenumber(g.spec.length_x), k2 = wavenumber(g.spec.length_y);
  return mu * (k1 * k1 + k2 * k2);
}

bool is_boundary_data(const std::string& name) {
  return name == "zero" || name == "constant" || name == "sine" || name == "compatible" ||
         name == "compatible_plus";
}

BoundaryData boundary_data(const std::string& name, const BoundaryFrame& frame, const VectorField& u0,
                           double param, double time_amp) {
  const Grid& g = *frame.grid;
  BoundaryScalars base(frame.size(), 0.0);
  if (name == "zero") {
  } else if (name == "constant") {
    base.assign(frame.size(), param);
  } else if (name == "sine") {
    for (int k = 0; k < frame.size(); ++k) {
      const int node = frame.nodes[k].node;
      const int i = node / g.n2, j = node % g.n2;
      base[k] = g.polar ? param * std::sin(g.xi2[j]) : param * std::sin(wavenumber(g.spec.length_x) * g.xi1[i]);
    }
  } else if (name == "compatible" || name == "compatible_plus") {
    base = trace(curl2d(u0), frame);
    if (name == "compatible_plus")
      for (double& a : base) a += param;
  } else {
    throw Error(ErrorCode::ConfigError, "unknown boundary data '" + name + "'");
  }
  // The disk's pole cut carries homogeneous data.
  for (const BoundaryComponent& c : frame.components)
    if (c.artificial)
      for (int k = c.begin; k < c.begin + c.count; ++k) base[k] = 0.0;
  if (time_amp == 0.0) return [base](double) { return base; };
  return [base, time_amp](double t) {
    BoundaryScalars a = base;
    const double f = 1.0 + time_amp * std::sin(t);
    for (double& x : a) x *= f;
    return a;
  };
}

VectorField random_smooth_field(const GridPtr& g, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<Mode> modes = random_modes(*g, rng, 4);
  return sample(g, [&](double x, double y) {
    Vec2 u;
    for (const Mode& m : modes) {
      const double s = std::sin(m.kx * x + m.ky * y + m.phase);
      u.x += m.amp_x * s;
      u.y += m.amp_y * s;
    }
    return u;
  });
}

VectorField random_divfree_field(const GridPtr& g, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<Mode> modes = random_modes(*g, rng, 4);
  // Stream function sum amp_x sin(k.x + phase); u = (d_y psi, -d_x psi).
  return sample(g, [&](double x, double y) {
    Vec2 u;
    for (const Mode& m : modes) {
      const double c = m.amp_x * std::cos(m.kx * x + m.ky * y + m.phase);
      u.x += m.ky * c;
      u.y -= m.kx * c;
    }
    return u;
  });
}

VectorField random_absolute_field(const GridPtr& g, std::uint64_t seed) {
  if (g->spec.kind == DomainKind::Torus) throw Error(ErrorCode::NoBoundary, "absolute fields need walls");
  Rng rng(seed);
  const Trig G(rng), H(rng);
  double c[3];
  for (double& x : c) x = rng.uniform(-1.0, 1.0);
  // Wall-normal profile s vanishes at both walls; the tangential profile P
  // has zero slope there, which makes the wall vorticity vanish.
  if (g->polar) {
    const double a = g->xi1.front(), b = g->xi1.back(), L = b - a;
    return sample(g, [=](double x, double y) {
      const double r = std::hypot(x, y), th = std::atan2(y, x);
      const double z = M_PI * (r - a) / L;
      const double s = (r - a) * (b - r);
      const double P = c[0] + c[1] * std::cos(z) + c[2] * std::cos(2.0 * z);
      const double ur = s * G(th), ut = P / r * H(th);
      const double cs = std::cos(th), sn = std::sin(th);
      return Vec2{ur * cs - ut * sn, ur * sn + ut * cs};
    });
  }
  const double L = g->spec.length_y, k = wavenumber(g->spec.length_x);
  return sample(g, [=](double x, double y) {
    const double z = M_PI * y / L;
    const double s = y * (L - y);
    const double P = c[0] + c[1] * std::cos(z) + c[2] * std::cos(2.0 * z);
    return Vec2{P * H(k * x), s * G(k * x)};
  });
}

}  // namespace vortibc
