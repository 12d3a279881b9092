#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vortibc/diagnostics.hpp"
#include "vortibc/fixedpoint.hpp"

namespace vortibc {

// Euler flow u_t + u.grad u + grad p = 0, div u = 0, u.nu = 0, advanced in
// vorticity-streamfunction form: omega_t + div(u omega) = 0 with flux-form
// finite volumes and Heun's second-order Runge-Kutta step; lap s = -omega,
// s constant on each wall, u = (d2 s, -d1 s).  The wall constants follow
// from the conserved circulation of the outer (annulus) or top (channel)
// wall; on the torus the conserved mean velocity is added.
struct EulerResult {
  VectorHistory u;
  // Finite-volume circulation of each wall component, per snapshot.
  std::vector<std::vector<double>> circulation;
  std::vector<double> energy;           // |u|^2
  std::vector<double> total_vorticity;  // integral of omega
};

EulerResult solve_euler(const VectorField& u0, double T, double dt);

// Circulation integral of u tangential to one boundary component.
double circulation(const VectorField& u, const BoundaryFrame& frame, int component);

struct SweepConfig {
  StokesRun base;            // grid, T, dt (0: min(h^2, T / 100)), u0 and a; mu is overwritten
  std::vector<double> mu_list;  // strictly decreasing
  PicardConfig picard;
  int threads = 1;           // concurrent mu runs
};

void validate(const SweepConfig& cfg);

struct SweepRow {
  double mu = 0.0;
  double e_sup = 0.0;   // sup_t |u_mu - u|
  double e_grad = 0.0;  // int_0^T |grad(u_mu - u)|^2
  double noise_floor = 0.0;
  bool converged = false;
  std::string error;  // failure message when not converged
};

struct SweepReport {
  std::vector<SweepRow> rows;  // in mu_list order
  double noise_floor = 0.0;    // 10 (h^2 + dt)
  bool has_slope = false;      // needs two converged rows
  double slope = 0.0;          // least squares of log e_sup against log mu
  bool above_floor = false;    // every converged e_sup exceeds the floor
  double grad_ratio = 0.0;     // max / min e_grad over converged rows
  bool partial = false;        // some mu failed

  // Columns: mu, e_sup, e_grad, noise_floor, converged.
  DiagnosticsRecord table() const;
  // "slope=<value>" or "slope=n/a", with the floor and gradient ratio.
  std::string summary() const;
};

// Runs the Euler reference once and picard_solve for each mu.  Failed runs
// are recorded (partial = true) rather than thrown.
SweepReport sweep_mu(const SweepConfig& cfg);

// Per-step terms of d/dt |v|^2 + mu |grad v|^2 <= C (A + B) with
//   A = (|grad u|_inf + mu0) |v|^2,  B = mu (|a|^2_Gamma + |u|^2_H2),
// v = u_mu - u and d/dt by second-order differences.
struct ViscousGronwallReport {
  std::vector<double> t, lhs, A, B;
};
ViscousGronwallReport gronwall_viscous_terms(const VectorHistory& u_mu, const VectorHistory& u, const BoundaryData& a,
                                             double mu, double mu0, const BoundaryFrame* frame);
struct ViscousGronwallCheck {
  bool holds = true;
  int first_failure = -1;
  double worst_ratio = 0.0;  // max lhs / (C (A + B))
};
// drop_mu_term removes B (sensitivity variant).
ViscousGronwallCheck check_gronwall_viscous(const ViscousGronwallReport& r, double C, bool drop_mu_term = false);
double calibrate_gronwall_viscous(const ViscousGronwallReport& r);

}  // namespace vortibc
