#pragma once

#include <vector>

#include "vortibc/diagnostics.hpp"
#include "vortibc/linparab.hpp"
#include "vortibc/stokes.hpp"

namespace vortibc {

struct PicardConfig {
  double tol_fix = 1e-8;       // absolute, in the W_T norm
  int max_iter = 40;
  int contraction_window = 2;  // consecutive ratios >= 1 that abort
};

void validate(const PicardConfig& cfg);

struct NSSolution {
  VectorHistory v, w, u;
  ScalarHistory p;  // pressure of the velocity map at the fixed point
  ScalarHistory q;  // harmonic pressure of the Stokes part
  std::vector<double> delta;  // W_T norm of successive differences
  std::vector<double> ratio;  // delta[k] / delta[k - 1], 0 for k = 0
  int iterations = 0;
  double mu = 0.0;
  // Columns: iter, delta_WT, ratio.
  DiagnosticsRecord trace() const;
};

// sup_t |v(t)|_N with v_t from the history.
double wt_norm(const VectorHistory& v);

// u = v + w, with w the Stokes solution for run and v the fixed point of the
// velocity map, iterated from v = 0.
NSSolution picard_solve(const StokesRun& run, const PicardConfig& cfg);

struct IncompressibilityReport {
  double max_div_v = 0.0;  // max_t |div v|
  double max_div_u = 0.0;
  std::vector<double> div_v;  // per snapshot
};
IncompressibilityReport verify_incompressibility(const NSSolution& sol);

struct NSResidualReport {
  double interior = 0.0;      // max_t |u_t + u.grad u + grad p - mu lap u| off the walls
  double max_normal = 0.0;    // max_t max |u . nu|
  double max_vorticity = 0.0; // max_t max |omega(u) - a|
  double initial = 0.0;       // |u(0) - u0|
};
NSResidualReport ns_residual(const NSSolution& sol, const VectorField& u0, const BoundaryData& a,
                             const BoundaryFrame* frame);

// sup_t |P(u) - (p + q)| after removing means, with P(u) the pressure of u
// including the viscous boundary term.
double compare_pressures(const NSSolution& sol, const BoundaryData& a, const BoundaryFrame* frame);

}  // namespace vortibc
