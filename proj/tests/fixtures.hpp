#pragma once

#include "vortibc/euler.hpp"
#include "vortibc/linparab.hpp"
#include "vortibc/scenarios.hpp"
#include "vortibc/stokes.hpp"

namespace vortibc::fixtures {

// Calibration run for the velocity-map bounds: random divergence-free data on
// the 2 pi torus at 48^2, unit peak speed, mu = 0.01, T = 1, 50 steps, beta = 0.
inline TheoremDiagnostics velocity_map_calibration() {
  auto g = build_grid(DomainSpec::torus(2.0 * M_PI, 2.0 * M_PI), 48, 48);
  StokesRun run;
  run.grid = g;
  run.mu = 0.01;
  run.T = 1.0;
  run.dt = 0.02;
  const VectorField u = random_divfree_field(g, 7);
  run.u0 = (1.0 / max_speed(u)) * u;
  VelocityMapInput in;
  in.w = solve_stokes(run).w;
  in.mu = run.mu;
  return compute_F(apply_velocity_map(in), {}, in.w, nullptr);
}

// Frozen from velocity_map_calibration (rounded up in the third digit).
inline constexpr double kGronwallDiffC = 2.94e-4;
inline constexpr double kGronwallC1 = 1.0;
inline constexpr double kGronwallC2 = 1.0;

// Weak shear layer (peak speed 0.25) on Annulus(1, 2) whose wall vorticity
// data exceed the trace of curl u0 by 5, so boundary forcing dominates.
inline StokesRun forced_shear(int n, double mu, double T, double dt) {
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), n, n);
  StokesRun run;
  run.grid = g;
  run.mu = mu;
  run.T = T;
  run.dt = dt;
  run.u0 = initial_condition("shear_layer", g, 0.25);
  run.a = boundary_data("compatible_plus", *boundary_frame(g), run.u0, 5.0);
  return run;
}

// Viscous Gronwall calibration: forced_shear at 32^2, mu = 0.01, T = 0.25,
// dt = 0.005, against the Euler solution on the same grid.
inline constexpr double kViscousMu0 = 0.1;
inline ViscousGronwallReport viscous_calibration() {
  const StokesRun run = forced_shear(32, 0.01, 0.25, 0.005);
  const EulerResult eu = solve_euler(run.u0, run.T, run.dt);
  const NSSolution ns = picard_solve(run, {});
  return gronwall_viscous_terms(ns.u, eu.u, run.a, run.mu, kViscousMu0, boundary_frame(run.grid).get());
}

// Frozen from viscous_calibration (0.17364, rounded up in the third digit).
inline constexpr double kGronwallViscousC = 0.174;

}  // namespace vortibc::fixtures
