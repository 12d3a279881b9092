#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "vortibc/elliptic.hpp"

using namespace vortibc;

namespace {

VectorHistory constant_history(const VectorField& u, double dt, int count) {
  VectorHistory h;
  h.dt = dt;
  h.snapshots.assign(count, u);
  return h;
}

VectorHistory stokes_history(const GridPtr& g, const std::string& ic, double param, const std::string& bc, double mu,
                             double T, double dt) {
  StokesRun run;
  run.grid = g;
  run.mu = mu;
  run.T = T;
  run.dt = dt;
  run.u0 = initial_condition(ic, g, param);
  FramePtr f = boundary_frame_or_null(g);
  if (f) run.a = boundary_data(bc, *f, run.u0, 1.0);
  return solve_stokes(run).w;
}

template <class Fn>
void expect_code(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("zero data gives zero") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 16, 16);
  VelocityMapInput in;
  in.w = constant_history(VectorField(g), 0.01, 5);
  const VectorHistory v = apply_velocity_map(in);
  REQUIRE(v.size() == 5);
  for (std::size_t n = 0; n < v.size(); ++n) CHECK(max_abs(v[n]) == 0.0);
  const TheoremDiagnostics d = compute_F(v, {}, in.w, boundary_frame(g).get());
  for (std::size_t n = 0; n < d.t.size(); ++n) {
    CHECK(d.F[n] == 0.0);
    CHECK(d.Q[n] == doctest::Approx(d.t[n]).epsilon(1e-14));
  }
}

TEST_CASE("one step against explicit assembly") {
  SUBCASE("stationary circulation on the annulus") {
    double prev = 0.0;
    for (int n : {32, 64}) {
      auto g = build_grid(DomainSpec::annulus(1.0, 2.0), n, n);
      auto f = boundary_frame(g);
      const VectorField u0 = initial_condition("circulation", g, 0.5);
      VelocityMapInput in;
      in.mu = 0.1;
      in.w = constant_history(u0, 0.01, 2);
      const VectorField v1 = apply_velocity_map(in)[1];
      const ImplicitVectorDiffusion D(g, in.mu * in.w.dt);
      const VectorField b = -in.w.dt * (advect(u0, u0) + grad(solve_pressure_euler(u0, f.get())));
      const VectorField oracle = D.solve(b, BoundaryScalars(f->size(), 0.0));
      CHECK(l2(v1 - oracle) <= 1e-12 * l2(oracle));
      // The centripetal force is a pressure gradient, so the step is a
      // truncation error that shrinks under refinement.
      if (prev > 0.0) CHECK(l2(v1) < 0.3 * prev);
      prev = l2(v1);
    }
  }
  SUBCASE("Taylor-Green on the torus") {
    auto g = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), 32, 32);
    const VectorField u0 = initial_condition("taylor_green", g, 1.0);
    VelocityMapInput in;
    in.mu = 0.05;
    in.w = constant_history(u0, 0.01, 2);
    const VectorField v1 = apply_velocity_map(in)[1];
    const ImplicitVectorDiffusion D(g, in.mu * in.w.dt);
    VectorField residual = v1 - in.mu * in.w.dt * D.apply_laplacian(v1);
    axpy(in.w.dt, advect(u0, u0) + grad(solve_pressure_euler(u0, nullptr)), residual);
    CHECK(max_abs(residual) <= 1e-13);
  }
}

TEST_CASE("absolute boundary conditions are preserved") {
  for (auto spec : {DomainSpec::annulus(1.0, 2.0), DomainSpec::channel(2.0 * M_PI, 1.0)}) {
    auto g = build_grid(spec, 32, 32);
    auto f = boundary_frame(g);
    VelocityMapInput in;
    in.mu = 0.05;
    const bool polar = g->polar;
    in.w = stokes_history(g, polar ? "shear_layer" : "zero", 0.5, "sine", in.mu, 0.1, 0.01);
    in.beta = apply_velocity_map(in);
    const VectorHistory v = apply_velocity_map(in);
    for (std::size_t n = 0; n < v.size(); ++n) {
      for (const VectorField& x : {v[n], v.derivative(n)}) {
        CHECK(max_abs(normal_component(x, *f)) <= 1e-10);
        CHECK(max_abs(trace(curl2d(x), *f)) <= 1e-9);
      }
    }
    // Every step solves a compatible Neumann problem.
    CHECK_NOTHROW(compute_F(v, in.beta, in.w, f.get()));
  }
}

TEST_CASE("affine in the initial value") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 24, 32);
  VelocityMapInput in;
  in.mu = 0.1;
  in.w = stokes_history(g, "rigid_rotation", 0.5, "compatible", in.mu, 0.05, 0.01);
  const VectorHistory base = apply_velocity_map(in);
  const VectorField pa = 0.1 * random_absolute_field(g, 11), pb = 0.1 * random_absolute_field(g, 12);
  in.v0 = pa;
  const VectorHistory va = apply_velocity_map(in);
  in.v0 = pb;
  const VectorHistory vb = apply_velocity_map(in);
  in.v0 = pa + pb;
  const VectorHistory vab = apply_velocity_map(in);
  for (std::size_t n = 0; n < base.size(); ++n) {
    const VectorField sum = va[n] + vb[n] - base[n];
    CHECK(l2(vab[n] - sum) <= 1e-11 * l2(vab[n]));
  }
}

TEST_CASE("input validation") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 16, 16);
  VelocityMapInput in;
  in.w = constant_history(initial_condition("circulation", g, 1.0), 0.01, 3);
  in.beta = constant_history(initial_condition("circulation", g, 1.0), 0.01, 3);
  expect_code(ErrorCode::InvalidSpec, [&] { apply_velocity_map(in); });
  in.beta = constant_history(VectorField(g), 0.01, 2);
  expect_code(ErrorCode::InvalidSpec, [&] { apply_velocity_map(in); });
  in.beta = {};
  in.w = constant_history(initial_condition("circulation", g, 100.0), 0.01, 3);
  expect_code(ErrorCode::CFLViolation, [&] { apply_velocity_map(in); });
  in.w = constant_history(VectorField(g), 0.01, 2);
  expect_code(ErrorCode::MissingTimeDerivative, [&] { compute_F(apply_velocity_map(in), {}, in.w, nullptr); });
}

TEST_CASE("F(0) agrees with the direct formula") {
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    auto g = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), n, n);
    StokesRun run;
    run.grid = g;
    run.mu = 0.01;
    run.T = 0.02;
    run.dt = 0.08 / n;
    const VectorField u = random_divfree_field(g, 7);
    run.u0 = (1.0 / max_speed(u)) * u;
    VelocityMapInput in;
    in.mu = run.mu;
    in.w = solve_stokes(run).w;
    const TheoremDiagnostics d = compute_F(apply_velocity_map(in), {}, in.w, nullptr);
    CHECK(d.grad_g_q[0] == 0.0);
    const double err = std::abs(d.F[0] - initial_F(run.u0, nullptr));
    if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.8);
    prev = err;
  }
}

TEST_CASE("F is non-negative and Q non-decreasing") {
  const TheoremDiagnostics d = fixtures::velocity_map_calibration();
  for (std::size_t n = 0; n < d.t.size(); ++n) {
    CHECK(d.F[n] >= 0.0);
    if (n > 0) CHECK(d.Q[n] > d.Q[n - 1]);
  }
  const DiagnosticsRecord r = d.record();
  CHECK(r.column("F") == d.F);
}

TEST_CASE("Gronwall regressions with frozen constants") {
  const TheoremDiagnostics d = fixtures::velocity_map_calibration();
  CHECK(check_gronwall_differential(d, fixtures::kGronwallDiffC).holds);
  CHECK_FALSE(check_gronwall_differential(d, 0.5 * fixtures::kGronwallDiffC).holds);
  CHECK(check_gronwall_regression(d, fixtures::kGronwallC1, fixtures::kGronwallC2).holds);
  CHECK_FALSE(check_gronwall_regression(d, 0.5 * fixtures::kGronwallC1, fixtures::kGronwallC2).holds);
  // The forcing integral dominates F at unit amplitude, so the integrated
  // bound binds at t = 0 where it does not depend on C2.
  CHECK(check_gronwall_regression(d, fixtures::kGronwallC1, 0.5 * fixtures::kGronwallC2).worst_index == 0);
  CHECK(calibrate_gronwall_C1(d, fixtures::kGronwallC2) <= fixtures::kGronwallC1);
}

TEST_CASE("zero run satisfies the bound") {
  auto g = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), 16, 16);
  VelocityMapInput in;
  in.w = constant_history(VectorField(g), 0.1, 4);
  const TheoremDiagnostics d = compute_F(apply_velocity_map(in), {}, in.w, nullptr);
  CHECK(check_gronwall_regression(d, 1.0, 1.0).holds);
  CHECK(check_gronwall_differential(d, 1e-12).holds);
}
