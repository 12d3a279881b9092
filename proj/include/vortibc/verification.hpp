#pragma once

#include <string>
#include <vector>

#include "vortibc/fieldcalc.hpp"

namespace vortibc {

// Boundary identities, max-norm residual over boundary nodes.  With
// u_n = <u,nu>, u_t = <u,tau>, d/ds along tau and h the curvature:
//   <w.grad u, nu> = -h u_t w_t - h w_n u_n + w_n div u
//                    + w_t d/ds u_n + u_t d/ds w_n - d/ds(w_n u_t)
double check_lemma21(const VectorField& u, const VectorField& w, const BoundaryFrame& frame);

// (i)  d/dnu div u = <lap u, nu> + d/ds omega
// (ii) 1/2 d/dnu |u|^2 = omega u_t + u_n div u - h u_t^2 - h u_n^2
//                        + 2 u_t d/ds u_n - d/ds(u_n u_t)
struct Lemma22Residual {
  double part_i = 0.0;
  double part_ii = 0.0;
};
Lemma22Residual check_lemma22(const VectorField& u, const BoundaryFrame& frame);

// In 2D curl maps vectors to scalars and back, so the pairing is between a
// vector u and a scalar w:
//   int curl2d(u) w = int <u, curl_scalar(w)> + oint w u_t dS.
// frame may be null on the torus.
double check_integration_by_parts(const VectorField& u, const ScalarField& w, const BoundaryFrame* frame);

// Integral identities for <lap u, u> and |grad u|^2, plus the pointwise
// Bochner formula <lap u, u> = 1/2 lap|u|^2 - |grad u|^2 (interior, max norm).
struct BochnerResidual {
  double laplace_pairing = 0.0;
  double gradient_energy = 0.0;
  double pointwise = 0.0;
};
BochnerResidual check_bochner_suite(const VectorField& u, const BoundaryFrame* frame);

// Pointwise residuals on nodes at least two cells from any wall:
//   convective:     u.grad u - (omega x u + 1/2 grad|u|^2)
//   curl_advection: curl2d(X.grad Y) - [eps (grad X)(grad Y) + X.grad curl2d(Y)]
//   laplacian:      lap u - (-curl_scalar(omega) + grad div u)
struct VectorIdentityResidual {
  double convective = 0.0;
  double curl_advection = 0.0;
  double laplacian = 0.0;
};
VectorIdentityResidual check_vector_identities(const VectorField& u);
VectorIdentityResidual check_vector_identities(const VectorField& X, const VectorField& Y);

struct AbsoluteBCReport {
  double h1_ratio = 0.0;       // ||u||_H1 / ||(omega, div u, u)||
  double hessian_ratio = 0.0;  // ||grad^2 u||^2 / (||lap u||^2 + ||grad u||^2)
  double h2_ratio = 0.0;       // ||u||_H2 / ||(grad div u, curl omega, u)||
  int samples = 0;
};
// Each field must have u_n = 0 (to 1e-10 of its size) and boundary
// vorticity within bc_tol of its interior maximum.
AbsoluteBCReport check_absolute_bc_inequalities(const std::vector<VectorField>& ensemble,
                                                const BoundaryFrame& frame, double bc_tol = 0.05);

// Smallest C with oint |u|^2 <= eps ||grad u||^2 + (C/eps) ||u||^2.
double trace_constant(const VectorField& u, const BoundaryFrame& frame, double eps);

// max over the boundary of |<curl_scalar(curl2d u), nu>|.
double psi_normal_trace(const VectorField& u, const BoundaryFrame& frame);

// Every identity residual on fixed smooth manufactured fields, at each
// resolution n x n.  Boundary identities are skipped on the torus.
struct IdentitySuiteReport {
  std::vector<int> resolutions;
  std::vector<std::string> checks;
  std::vector<std::vector<double>> residual;  // [check][resolution]
  bool boundary_skipped = false;

  // Smallest observed order between consecutive resolutions.  Residuals at
  // rounding level (below 1e-10) count as exact and are skipped.
  double min_order(std::size_t check) const;
  // First check whose order falls below the threshold, or -1.
  int first_failure(double min_order_required) const;
};
IdentitySuiteReport run_identity_suite(const DomainSpec& domain, const std::vector<int>& resolutions);

}  // namespace vortibc
