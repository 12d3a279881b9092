#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "vortibc/euler.hpp"
#include "vortibc/log.hpp"
#include "vortibc/scenarios.hpp"

using namespace vortibc;

namespace {

double sup_distance(const VectorHistory& u, const VectorField& ref) {
  double e = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n) e = std::max(e, l2(u[n] - ref));
  return e;
}

struct QuietLogs {
  LogLevel saved = log_level();
  QuietLogs() { set_log_level(LogLevel::Quiet); }
  ~QuietLogs() { set_log_level(saved); }
};

}  // namespace

TEST_CASE("zero data stays zero") {
  for (auto spec : {DomainSpec::annulus(1.0, 2.0), DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI)}) {
    auto g = build_grid(spec, 16, 16);
    const EulerResult r = solve_euler(VectorField(g), 0.1, 0.01);
    CHECK(r.u.size() == 11);
    for (std::size_t n = 0; n < r.u.size(); ++n) CHECK(max_abs(r.u[n]) == 0.0);
  }
}

TEST_CASE("stationary circulation is preserved at second order") {
  double prev = 0.0;
  for (int n : {32, 64}) {
    auto g = build_grid(DomainSpec::annulus(1.0, 2.0), n, n);
    const VectorField u0 = initial_condition("circulation", g, 0.5);
    const double e = sup_distance(solve_euler(u0, 1.0, 0.01).u, u0);
    CHECK(e <= 2.0 / (n * n));
    if (prev > 0.0) CHECK(std::log2(prev / e) >= 1.8);
    prev = e;
  }
}

TEST_CASE("Taylor-Green is a stationary Euler flow") {
  double prev = 0.0;
  for (int n : {32, 64}) {
    auto g = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), n, n);
    const VectorField u0 = initial_condition("taylor_green", g, 1.0);
    const double e = sup_distance(solve_euler(u0, 1.0, 0.01).u, u0);
    CHECK(e <= 50.0 / (n * n));
    if (prev > 0.0) CHECK(std::log2(prev / e) >= 1.8);
    prev = e;
  }
}

TEST_CASE("circulation of each wall is conserved") {
  auto annulus = build_grid(DomainSpec::annulus(1.0, 2.0), 32, 32);
  auto channel = build_grid(DomainSpec::channel(2.0 * M_PI, 1.0), 32, 24);
  for (const GridPtr& g : {annulus, channel}) {
    const VectorField u0 = random_absolute_field(g, 11);
    const double dt = 0.4 * g->min_spacing() / max_speed(u0);
    const EulerResult r = solve_euler(u0, 50.0 * dt, dt);
    const double scale = std::abs(r.circulation[0][0]) + std::abs(r.circulation[0][1]) + 1.0;
    for (const auto& c : r.circulation) {
      CHECK(std::abs(c[0] - r.circulation[0][0]) <= 1e-10 * scale);
      CHECK(std::abs(c[1] - r.circulation[0][1]) <= 1e-10 * scale);
    }
    const auto frame = boundary_frame(g);
    CHECK(std::abs(r.circulation[0][1] - circulation(u0, *frame, 1)) <= 1e-10 * scale);
    // The finite-volume wall circulation agrees with the trapezoid line integral.
    const double h2 = g->min_spacing() * g->min_spacing();
    for (int c : {0, 1}) CHECK(std::abs(r.circulation.back()[c] - circulation(r.u.snapshots.back(), *frame, c)) <= 20.0 * h2 * scale);
    CHECK(std::abs(r.total_vorticity.back() - r.total_vorticity.front()) <= 1e-10 * scale);
  }
}

TEST_CASE("kinetic energy on the torus drifts at second order") {
  double prev = 0.0;
  for (int n : {32, 64}) {
    auto g = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), n, n);
    const VectorField u0 = random_divfree_field(g, 3);
    const VectorField u = (1.0 / max_speed(u0)) * u0;
    const EulerResult r = solve_euler(u, 1.0, 0.64 / n);
    double drift = 0.0;
    for (double e : r.energy) drift = std::max(drift, std::abs(e - r.energy[0]) / r.energy[0]);
    CHECK(drift <= 1e-2);
    if (prev > 0.0) CHECK(std::log2(prev / drift) >= 1.8);
    prev = drift;
  }
}

TEST_CASE("Euler input errors") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 16, 16);
  const VectorField u0 = initial_condition("circulation", g, 1.0);
  try {
    solve_euler(u0, 1.0, 0.5);
    FAIL("expected CFLViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CFLViolation);
  }
  auto disk = build_grid(DomainSpec::disk(1.0), 16, 16);
  try {
    solve_euler(VectorField(disk), 0.1, 0.01);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
}

TEST_CASE("sweep configuration validation") {
  SweepConfig cfg;
  cfg.base = fixtures::forced_shear(16, 0.1, 0.05, 0.01);
  cfg.mu_list = {0.1, 0.1};
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.mu_list = {0.1, -0.01};
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.mu_list = {0.1};
  cfg.threads = 0;
  CHECK_THROWS_AS(validate(cfg), Error);
}

TEST_CASE("sweep is deterministic across thread counts") {
  QuietLogs quiet;
  SweepConfig cfg;
  cfg.base = fixtures::forced_shear(24, 0.1, 0.1, 0.005);
  cfg.mu_list = {1e-1, 1e-2, 1e-3};
  const SweepReport a = sweep_mu(cfg);
  cfg.threads = 3;
  const SweepReport b = sweep_mu(cfg);
  REQUIRE(a.rows.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(a.rows[k].mu == cfg.mu_list[k]);
    CHECK(a.rows[k].converged);
    CHECK(a.rows[k].e_sup == b.rows[k].e_sup);
    CHECK(a.rows[k].e_grad == b.rows[k].e_grad);
  }
  CHECK(a.table().rows == b.table().rows);
  CHECK(a.has_slope);
  CHECK(a.slope == b.slope);
  CHECK(!a.partial);
  // Boundary forcing makes the error shrink with mu.
  CHECK(a.rows[0].e_sup > a.rows[1].e_sup);
  CHECK(a.rows[1].e_sup > a.rows[2].e_sup);
}

TEST_CASE("a single viscosity has no slope") {
  QuietLogs quiet;
  SweepConfig cfg;
  cfg.base = fixtures::forced_shear(16, 0.1, 0.05, 0.01);
  cfg.mu_list = {0.01};
  const SweepReport r = sweep_mu(cfg);
  CHECK(!r.has_slope);
  CHECK(r.summary().rfind("slope=n/a", 0) == 0);
}

TEST_CASE("compatible data on a steady flow stays under the noise floor") {
  QuietLogs quiet;
  SweepConfig cfg;
  cfg.base.grid = build_grid(DomainSpec::annulus(1.0, 2.0), 24, 24);
  cfg.base.T = 0.1;
  cfg.base.dt = 0.005;
  cfg.base.u0 = initial_condition("circulation", cfg.base.grid, 0.5);
  cfg.base.a = boundary_data("compatible", *boundary_frame(cfg.base.grid), cfg.base.u0, 0.0);
  cfg.mu_list = {1e-1, 1e-2, 1e-3};
  const SweepReport r = sweep_mu(cfg);
  CHECK(!r.above_floor);
  for (const SweepRow& row : r.rows) CHECK(row.e_sup < r.noise_floor);
}

TEST_CASE("failed viscosities are reported, not thrown") {
  QuietLogs quiet;
  // mu = 0.1 trips the advective CFL guard inside the velocity map; the
  // other viscosities and the Euler reference do not.
  SweepConfig cfg;
  cfg.base = fixtures::forced_shear(16, 0.1, 1.0, 0.02);
  cfg.base.u0 = initial_condition("shear_layer", cfg.base.grid, 2.0);
  cfg.mu_list = {1.0, 0.1, 0.001};
  const SweepReport r = sweep_mu(cfg);
  CHECK(r.partial);
  CHECK(r.rows[0].converged);
  CHECK(!r.rows[1].converged);
  CHECK(r.rows[1].error.find("CFL") != std::string::npos);
  CHECK(r.rows[2].converged);
  CHECK(r.has_slope);
  CHECK(r.table().column("converged") == std::vector<double>{1.0, 0.0, 1.0});
}

TEST_CASE("viscous Gronwall inequality") {
  QuietLogs quiet;
  const ViscousGronwallReport r = fixtures::viscous_calibration();
  CHECK(calibrate_gronwall_viscous(r) <= fixtures::kGronwallViscousC);
  CHECK(check_gronwall_viscous(r, fixtures::kGronwallViscousC).holds);
  CHECK(!check_gronwall_viscous(r, 0.5 * fixtures::kGronwallViscousC).holds);
  const ViscousGronwallCheck dropped = check_gronwall_viscous(r, fixtures::kGronwallViscousC, true);
  CHECK(!dropped.holds);
  CHECK(dropped.first_failure >= 0);
  CHECK(dropped.first_failure <= 2);
}

TEST_CASE("viscous Gronwall with v = 0") {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 16, 16);
  const VectorField u0 = initial_condition("circulation", g, 0.5);
  const EulerResult eu = solve_euler(u0, 0.05, 0.01);
  const ViscousGronwallReport r =
      gronwall_viscous_terms(eu.u, eu.u, boundary_data("constant", *boundary_frame(g), u0, 1.0), 0.01, 0.1,
                             boundary_frame(g).get());
  for (std::size_t n = 0; n < r.t.size(); ++n) {
    CHECK(r.lhs[n] == 0.0);
    CHECK(r.A[n] == 0.0);
    CHECK(r.B[n] > 0.0);
  }
  CHECK(check_gronwall_viscous(r, 1e-6).holds);
}
