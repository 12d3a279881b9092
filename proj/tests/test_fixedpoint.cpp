#include <cmath>

#include "doctest.h"
#include "vortibc/fixedpoint.hpp"
#include "vortibc/log.hpp"
#include "vortibc/scenarios.hpp"

using namespace vortibc;

namespace {

// Shear layer of peak speed 2 on Annulus(1, 2) at 24^2 with compatible
// constant boundary vorticity, mu = 0.05, dt = 0.01.
StokesRun reference(double T) {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 24, 24);
  auto f = boundary_frame(g);
  StokesRun run;
  run.grid = g;
  run.mu = 0.05;
  run.T = T;
  run.dt = 0.01;
  run.u0 = initial_condition("shear_layer", g, 2.0);
  run.a = boundary_data("compatible", *f, run.u0, 1.0);
  return run;
}

StokesRun taylor_green(int n) {
  StokesRun run;
  run.grid = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), n, n);
  run.mu = 0.01;
  run.T = 0.5;
  run.dt = 0.01;
  run.u0 = initial_condition("taylor_green", run.grid, 1.0);
  return run;
}

}  // namespace

TEST_CASE("zero data converges in one iteration") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 16, 16);
  StokesRun run;
  run.grid = g;
  run.T = 0.05;
  run.dt = 0.01;
  run.u0 = VectorField(g);
  const NSSolution sol = picard_solve(run, {});
  CHECK(sol.iterations == 1);
  for (std::size_t n = 0; n < sol.u.size(); ++n) CHECK(max_abs(sol.u[n]) == 0.0);
  CHECK(verify_incompressibility(sol).max_div_v == 0.0);
  const NSResidualReport r = ns_residual(sol, run.u0, run.a, boundary_frame(g).get());
  CHECK(r.interior == 0.0);
  CHECK(r.max_normal == 0.0);
  CHECK(r.max_vorticity == 0.0);
  CHECK(r.initial == 0.0);
  CHECK(compare_pressures(sol, run.a, boundary_frame(g).get()) == 0.0);
}

TEST_CASE("stationary circulation") {
  for (double mu : {0.1, 0.01}) {
    auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 32, 32);
    auto f = boundary_frame(g);
    StokesRun run;
    run.grid = g;
    run.mu = mu;
    run.T = 0.1;
    run.dt = 0.005;
    run.u0 = initial_condition("circulation", g, 0.2);
    const NSSolution sol = picard_solve(run, {});
    double e = 0.0;
    for (std::size_t n = 0; n < sol.u.size(); ++n) e = std::max(e, l2(sol.u[n] - run.u0));
    CHECK(e <= 1e-3);
    const NSResidualReport r = ns_residual(sol, run.u0, run.a, f.get());
    CHECK(r.max_normal <= 1e-10);
    CHECK(r.max_vorticity <= 1e-9);
    CHECK(r.initial == 0.0);
    CHECK(r.interior <= 1e-3);
    CHECK(compare_pressures(sol, run.a, f.get()) <= 1e-10);
  }
}

TEST_CASE("Taylor-Green against the analytic decay") {
  const StokesRun run = taylor_green(64);
  const NSSolution sol = picard_solve(run, {});
  const double rate = taylor_green_rate(*run.grid, run.mu);
  double err = 0.0;
  for (std::size_t n = 0; n < sol.u.size(); ++n) {
    const VectorField e = std::exp(-rate * sol.u.time(n)) * run.u0;
    err = std::max(err, l2(sol.u[n] - e) / l2(e));
  }
  CHECK(err <= 1e-2);
  for (std::size_t k = 1; k < sol.ratio.size(); ++k) CHECK(sol.ratio[k] <= 2.0 / 3.0);
  CHECK(compare_pressures(sol, {}, nullptr) <= 1e-10);
  const DiagnosticsRecord tr = sol.trace();
  CHECK(tr.rows.size() == static_cast<std::size_t>(sol.iterations));
  CHECK(tr.column("delta_WT").back() <= PicardConfig{}.tol_fix);
}

TEST_CASE("divergence of v converges at second order") {
  double prev = 0.0;
  for (int n : {32, 64}) {
    const double d = verify_incompressibility(picard_solve(taylor_green(n), {})).max_div_v;
    if (prev > 0.0) CHECK(std::log2(prev / d) >= 1.8);
    prev = d;
  }
}

TEST_CASE("corrupted solution is flagged") {
  const StokesRun run = taylor_green(32);
  NSSolution sol = picard_solve(run, {});
  const double clean = verify_incompressibility(sol).max_div_v;
  const VectorField noise = grad(sample(run.grid, [](double x, double y) { return 0.1 * std::sin(2.0 * x + y); }));
  for (std::size_t n = 1; n < sol.v.size(); ++n) sol.v[n] = sol.v[n] + noise;
  CHECK(verify_incompressibility(sol).max_div_v > 10.0 * clean);
}

TEST_CASE("contraction on the reference scenario") {
  const StokesRun run = reference(0.2);
  const NSSolution sol = picard_solve(run, {});
  for (std::size_t k = 1; k < sol.ratio.size(); ++k) CHECK(sol.ratio[k] <= 2.0 / 3.0);
  // One more application of the map moves the fixed point by at most 2 tol.
  VelocityMapInput in;
  in.w = sol.w;
  in.mu = run.mu;
  in.beta = sol.v;
  VectorHistory d = apply_velocity_map(in);
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = d[n] - sol.v[n];
  CHECK(wt_norm(d) <= 2.0 * PicardConfig{}.tol_fix);
}

TEST_CASE("long horizons do not silently succeed") {
  const LogLevel saved = log_level();
  set_log_level(LogLevel::Quiet);
  bool raised = false;
  for (double T = 0.5; T <= 8.0; T *= 2.0) {
    try {
      const NSSolution sol = picard_solve(reference(T), {});
      CHECK(sol.delta.back() <= PicardConfig{}.tol_fix);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoContraction);
      raised = true;
    }
  }
  CHECK(raised);
  set_log_level(saved);
}

TEST_CASE("iteration limit") {
  PicardConfig cfg;
  cfg.max_iter = 3;
  try {
    picard_solve(reference(0.2), cfg);
    FAIL("expected MaxIterExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaxIterExceeded);
  }
}

TEST_CASE("configuration and input validation") {
  PicardConfig cfg;
  cfg.tol_fix = 0.0;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = {};
  cfg.max_iter = 1;
  CHECK_THROWS_AS(validate(cfg), Error);
  StokesRun run = taylor_green(16);
  run.u0 = random_smooth_field(run.grid, 4);
  try {
    picard_solve(run, {});
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
}
