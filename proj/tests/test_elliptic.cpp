#include <cmath>

#include "doctest.h"
#include "vortibc/elliptic.hpp"
#include "vortibc/scenarios.hpp"

using namespace vortibc;

namespace {

double rel_l2(const ScalarField& a, const ScalarField& b) { return l2(a - b) / l2(b); }

ScalarField centered(ScalarField f) {
  const double m = mean(f);
  for (double& x : f.v) x -= m;
  return f;
}

NeumannProblem r2_problem(const GridPtr& g, const BoundaryFrame& f) {
  // phi = r^2: lap = 4, d/dnu = +2r outside, -2r inside.
  NeumannProblem p;
  p.grid = g;
  p.source = ScalarField(g, 4.0);
  p.flux.resize(f.size());
  for (int k = 0; k < f.size(); ++k) {
    const int i = f.nodes[k].node / g->n2;
    p.flux[k] = 2.0 * g->xi1[i] * (k < f.components[1].begin ? -1.0 : 1.0);
  }
  return p;
}

}  // namespace

TEST_CASE("zero data gives zero") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 16, 16);
  auto f = boundary_frame(g);
  NeumannProblem p;
  p.grid = g;
  p.source = ScalarField(g);
  p.flux.assign(f->size(), 0.0);
  CHECK(max_abs(solve_neumann(p).v) == 0.0);
}

TEST_CASE("manufactured r^2 is reproduced with zero mean") {
  for (int n : {16, 32, 64}) {
    auto g = build_grid(DomainSpec::annulus(1.0, 2.0), n, n);
    auto f = boundary_frame(g);
    const ScalarField phi = solve_neumann(r2_problem(g, *f));
    CHECK(std::abs(mean(phi)) <= 1e-12 * l2(phi));
    const ScalarField exact = centered(sample(g, [](double x, double y) { return x * x + y * y; }));
    // The finite-volume stencil is exact on radial quadratics.
    CHECK(l2(phi - exact) < 1e-10);
  }
}

TEST_CASE("manufactured solution converges at second order") {
  // phi = sin(x) e^{y/2}: lap phi = -0.75 phi.
  auto phi = [](double x, double y) { return std::sin(x) * std::exp(0.5 * y); };
  auto dphi = [](double x, double y) {
    return Vec2{std::cos(x) * std::exp(0.5 * y), 0.5 * std::sin(x) * std::exp(0.5 * y)};
  };
  for (auto spec : {DomainSpec::annulus(1.0, 2.0), DomainSpec::channel(2.0 * M_PI, 1.0)}) {
    double prev = 0.0;
    for (int n : {32, 64, 128}) {
      auto g = build_grid(spec, n, n);
      auto f = boundary_frame(g);
      NeumannProblem p;
      p.grid = g;
      p.tol_compat = 5e-2;
      p.source = -0.75 * sample(g, phi);
      p.flux.resize(f->size());
      for (int k = 0; k < f->size(); ++k) {
        const int node = f->nodes[k].node;
        const Vec2 x = g->position(node / g->n2, node % g->n2);
        p.flux[k] = dot(dphi(x.x, x.y), f->nodes[k].nu);
      }
      const double err = l2(solve_neumann(p) - centered(sample(g, phi)));
      if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.8);
      prev = err;
    }
  }
}

TEST_CASE("incompatible data is rejected") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 16, 16);
  auto f = boundary_frame(g);
  NeumannProblem p;
  p.grid = g;
  p.source = ScalarField(g, 1.0);
  p.flux.assign(f->size(), 0.0);
  try {
    solve_neumann(p);
    FAIL("expected IncompatibleData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatibleData);
  }
}

TEST_CASE("solver is linear") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 24, 32);
  auto f = boundary_frame(g);
  const NeumannProblem p1 = r2_problem(g, *f);
  NeumannProblem p2;
  p2.grid = g;
  p2.source = ScalarField(g);
  p2.flux = surface_curl(tangential_part(random_smooth_field(g, 9), *f), *f);
  NeumannProblem p3 = p1;
  for (int k = 0; k < g->size(); ++k) p3.source[k] = -2.5 * p1.source[k] + p2.source[k];
  for (int k = 0; k < f->size(); ++k) p3.flux[k] = -2.5 * p1.flux[k] + p2.flux[k];
  const ScalarField lhs = solve_neumann(p3);
  const ScalarField rhs = -2.5 * solve_neumann(p1) + solve_neumann(p2);
  CHECK(l2(lhs - rhs) <= 1e-10 * l2(rhs));
}

TEST_CASE("torus Poisson problem") {
  auto g = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), 32, 32);
  NeumannProblem p;
  p.grid = g;
  p.source = sample(g, [](double x, double y) { return -2.0 * std::sin(x) * std::sin(y); });
  const ScalarField phi = solve_neumann(p);
  const ScalarField exact = sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK(rel_l2(phi, exact) < 5e-3);
}

TEST_CASE("rigid rotation pressure") {
  for (double mu : {0.0, 0.3}) {
    double prev = 0.0;
    for (int n : {16, 32, 64}) {
      auto g = build_grid(DomainSpec::annulus(1.0, 2.0), n, n);
      auto f = boundary_frame(g);
      const VectorField u = initial_condition("rigid_rotation", g, 1.5);
      const BoundaryScalars a(f->size(), 3.0);
      const ScalarField p = solve_pressure_ns(u, a, mu, f.get());
      const ScalarField exact = centered(sample(g, [](double x, double y) { return 1.125 * (x * x + y * y); }));
      const double err = l2(p - exact);
      if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.8);
      prev = err;
    }
  }
}

TEST_CASE("euler pressure special cases") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 24, 32);
  auto f = boundary_frame(g);
  const VectorField zero(g);
  CHECK(max_abs(solve_pressure_euler(zero, f.get()).v) == 0.0);
  CHECK(max_abs(solve_pressure_ns(zero, BoundaryScalars(f->size(), 0.0), 0.5, f.get()).v) == 0.0);
  const VectorField w = initial_condition("rigid_rotation", g, 1.0);
  const ScalarField pe = solve_pressure_euler(w, f.get());
  CHECK(l2(solve_pressure_linearized(zero, w, f.get()) - pe) <= 1e-12 * l2(pe));
  CHECK(max_abs(solve_pressure_linearized(-1.0 * w, w, f.get()).v) == 0.0);
  try {
    solve_pressure_euler(random_smooth_field(g, 1), f.get());
    FAIL("expected BCViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BCViolation);
  }
}

TEST_CASE("viscous boundary term of the pressure") {
  // On Annulus(0.5, 1) with a = sin(theta), the mu term is the harmonic
  // q = (-r/15 + 1/(30 r)) cos(theta) for mu = 0.1.
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    auto g = build_grid(DomainSpec::annulus(0.5, 1.0), n, n);
    auto f = boundary_frame(g);
    const VectorField u = sample(g, [](double x, double y) {
      const double r = std::hypot(x, y), s = r * r;
      return Vec2{-s * y / r, s * x / r};
    });
    const BoundaryScalars a = boundary_data("sine", *f, u, 1.0)(0.0);
    const ScalarField dp = solve_pressure_ns(u, a, 0.1, f.get()) - solve_pressure_ns(u, a, 0.0, f.get());
    const ScalarField q = solve_harmonic_q(a, 0.1, *f);
    CHECK(l2(dp - q) <= 1e-9 * l2(q));
    const ScalarField exact = sample(g, [](double x, double y) {
      const double r = std::hypot(x, y);
      return (-r / 15.0 + 1.0 / (30.0 * r)) * x / r;
    });
    const double err = l2(q - exact);
    if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.8);
    prev = err;
    if (n == 128) {
      const BoundaryScalars dn = normal_derivative(q, *f);
      const BoundaryComponent& outer = f->components[1];
      for (int k = outer.begin; k < outer.begin + outer.count; ++k)
        CHECK(std::abs(dn[k] + 0.1 * std::cos(g->xi2[k - outer.begin])) < 1e-3);
    }
  }
}

TEST_CASE("harmonic q") {
  auto g = build_grid(DomainSpec::disk(1.0), 64, 64);
  auto f = boundary_frame(g);
  const VectorField none(g);
  CHECK(max_abs(solve_harmonic_q(BoundaryScalars(f->size(), 2.0), 0.3, *f).v) == 0.0);
  const BoundaryScalars a = boundary_data("sine", *f, none, 1.0)(0.0);
  CHECK(max_abs(solve_harmonic_q(a, 0.0, *f).v) == 0.0);
  // Zero flux on the pole cut r0: q = A (r + r0^2 / r) cos(theta), A (1 - r0^2) = -mu.
  const double mu = 0.2, r0 = g->xi1[0], A = -mu / (1.0 - r0 * r0);
  const ScalarField q = solve_harmonic_q(a, mu, *f);
  const ScalarField exact = centered(sample(g, [=](double x, double y) {
    const double r = std::hypot(x, y);
    return A * (r + r0 * r0 / r) * x / r;
  }));
  CHECK(rel_l2(q, exact) < 2e-3);
}

TEST_CASE("Solonnikov ratio") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 48, 48);
  const VectorField gradient = grad(sample(g, [](double x, double y) { return std::sin(x) * std::cos(0.5 * y) + x * y; }));
  CHECK(check_solonnikov(gradient) == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(check_solonnikov(initial_condition("rigid_rotation", g, 1.0)) < 1e-12);
  try {
    check_solonnikov(VectorField(g));
    FAIL("expected DegenerateInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateInput);
  }
  for (auto spec : {DomainSpec::annulus(1.0, 2.0), DomainSpec::channel(2.0 * M_PI, 1.0)}) {
    auto gs = build_grid(spec, 32, 32);
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) worst = std::max(worst, check_solonnikov(random_smooth_field(gs, 100 + s)));
    CHECK(worst <= 1.05);
  }
}
