#pragma once

#include <memory>
#include <vector>

#include "vortibc/diagnostics.hpp"
#include "vortibc/diffusion.hpp"
#include "vortibc/fieldcalc.hpp"

namespace vortibc {

// v_t + (beta + w).grad(v + w) = mu lap v - grad p_beta, v_n = 0 and
// omega(v) = 0 on the walls, with p_beta the pressure of beta + w.
struct VelocityMapInput {
  VectorHistory beta;  // empty means beta = 0; otherwise beta(0) = 0
  VectorHistory w;     // sets the time grid
  double mu = 0.1;
  VectorField v0;      // empty means v(0) = 0
  // Optional factorization of I - mu dt L for reuse across calls.
  std::shared_ptr<const ImplicitVectorDiffusion> diffusion;
};

inline constexpr double kAdvectiveCfl = 0.9;

// Advection and pressure explicit at the old level, diffusion implicit.
VectorHistory apply_velocity_map(const VelocityMapInput& in);

// Per snapshot:
//   F = |v|^2 + |psi|^2 + |grad g|^2 + |grad q|^2 + |v_t|^2 + |d_t|^2 + |omega_t|^2
//   Q = int_0^t (1 + |(beta, w)|_N^2)
// with d = div v, omega = curl2d v, psi = curl_scalar omega, g = d - q and
//   lap q = -div((beta + w).grad(beta - v)), dq/dnu = pi(beta + w, beta - v).
struct TheoremDiagnostics {
  std::vector<double> t, F, Q;
  std::vector<double> v_psi;       // |(v, psi)|^2
  std::vector<double> grad_g_q;    // |(grad g, grad q)|^2
  std::vector<double> time_terms;  // |(v_t, d_t, omega_t)|^2
  std::vector<double> n_bw;        // |(beta, w)|_N^2

  // Columns: t, F, Q, v_psi, grad_g_q, time_terms, n_bw.
  DiagnosticsRecord record() const;
};

// Needs at least three snapshots.  beta may be empty (zero).
TheoremDiagnostics compute_F(const VectorHistory& v, const VectorHistory& beta, const VectorHistory& w,
                             const BoundaryFrame* frame);

// F(0) from the initial velocity alone:
// |u0.grad u0 + grad p0|^2 + |curl(u0.grad u0)|^2 with p0 the Euler pressure.
double initial_F(const VectorField& u0, const BoundaryFrame* frame);

// F(t) <= C1 e^{C2 Q(t)} (F(0) + int_0^t e^{-C2 Q(s)} (1 + |(beta, w)|_N^2)^2 ds)
struct GronwallCheck {
  bool holds = true;
  double worst_ratio = 0.0;  // max_t F / bound
  int worst_index = -1;
};
GronwallCheck check_gronwall_regression(const TheoremDiagnostics& d, double C1, double C2);
// Smallest C1 for which the inequality holds with the given C2.
double calibrate_gronwall_C1(const TheoremDiagnostics& d, double C2);

// Differential form dF/dt <= C (|(beta, w)|_N^2 + 1)(F + 1 + |(beta, w)|_N^2),
// with dF/dt from second-order differences of the recorded F.
GronwallCheck check_gronwall_differential(const TheoremDiagnostics& d, double C);
double calibrate_gronwall_differential(const TheoremDiagnostics& d);

}  // namespace vortibc
