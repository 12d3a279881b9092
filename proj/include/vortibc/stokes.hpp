#pragma once

#include <vector>

#include "vortibc/diagnostics.hpp"
#include "vortibc/fieldcalc.hpp"
#include "vortibc/scenarios.hpp"

namespace vortibc {

enum class TimeScheme { BackwardEuler, CrankNicolson };

// w_t = mu lap w - grad q, div w = 0, w_n = 0 and omega(w) = a on the walls,
// w(0) = u0, with q harmonic and d q / d nu = -mu d a / ds.
struct StokesRun {
  GridPtr grid;
  double mu = 0.1;
  double T = 1.0;
  double dt = 0.0;  // 0 selects min(h^2, T / 100)
  VectorField u0;
  BoundaryData a;   // may be empty on the torus or for a = 0
  TimeScheme scheme = TimeScheme::BackwardEuler;
  int record_stride = 1;  // keep every k-th step
};

struct StokesResult {
  VectorHistory w;
  ScalarHistory q;
  // Columns: t, l2, h1, h2, div_l2, max_normal, max_vort_err.
  DiagnosticsRecord diag;
  double dt = 0.0;  // step actually used
  int steps = 0;
};

// Step count and step size: n = ceil(T / dt), dt = T / n.
int time_steps(double T, double& dt);

StokesResult solve_stokes(const StokesRun& run);

// Energy balances of g = curl2d(w) and h = curl_scalar(g), accumulated with
// the trapezoid rule over the recorded snapshots:
//   res_g = |g|^2(t) + 2 mu int |curl_scalar g|^2 - |g|^2(0) - 2 mu int oint a dg/dnu
//   res_h = |h|^2(t) + 2 mu int |curl2d h|^2 - |h|^2(0) - 2 int oint (da/dt) dg/dnu
// The boundary terms are the two-dimensional forms of the pairings with a
// and its time derivative (integration by parts of g lap g and grad g grad g_t).
// Columns: t, g2, diss_g, bdy_g, res_g, h2, diss_h, bdy_h, res_h.
DiagnosticsRecord stokes_energy_report(const VectorHistory& w, const BoundaryData& a, double mu,
                                       const BoundaryFrame* frame);

// |w|_{H^3}^2 built from third derivatives of each component.
double h3_sq(const VectorField& w);

struct Prop43Row {
  double mu = 0.0;
  double sup_h2_sq = 0.0;      // sup_t |w|_{H^2}^2
  double int_h3_sq = 0.0;      // int_0^T |w|_{H^3}^2
  double data = 0.0;           // |u0|_{H^2}^2 + mu |a|^2 (branch i) or |u0|_{H^2}^2 + |(a, a_t)|^2 (branch ii)
  double ratio = 0.0;          // (sup_h2_sq + mu int_h3_sq) / data, or (sup_h2 + int_h3_sq) / data
};
struct Prop43Report {
  bool time_dependent = false;
  std::vector<Prop43Row> rows;
  double max_ratio = 0.0;
  double sup_h2_variation = 0.0;  // max / min over mu of sup_t |w|_{H^2}
};

// Runs solve_stokes for each mu with the given template (mu overwritten).
Prop43Report verify_prop43(const StokesRun& base, const std::vector<double>& mu_list, bool time_dependent);

}  // namespace vortibc
