#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "vortibc/fieldcalc.hpp"

namespace vortibc {

// Delta phi = source in the domain, d phi / d nu = flux on the walls,
// weighted mean of phi zero.  When cell_source is non-empty it replaces
// weight * source with control-volume integrals (used for flux-form sources
// whose compatibility then telescopes exactly).
struct NeumannProblem {
  GridPtr grid;
  ScalarField source;
  BoundaryScalars flux;
  std::vector<double> cell_source;
  // Mean mismatch tolerated (and removed from the wall flux, or from the
  // source on the torus) relative to the data scale.
  double tol_compat = 1e-8;
};

ScalarField solve_neumann(const NeumannProblem& prob);

// Relative tolerance for the compatibility repair of pressure problems, whose
// discrete mismatch is a truncation error of order h^2.
inline constexpr double kPressureCompatTol = 5e-2;

// Delta p = -div(u.grad u), d p / d nu = pi(u, u) - mu d a / ds.  frame is null
// on the torus.  a may be empty when mu = 0.
// Delta p = -div(X.grad Y), d p / d nu = pi(X, Y) - mu d a / ds, for X and Y
// both tangential on the walls.
ScalarField solve_pressure_pair(const VectorField& X, const VectorField& Y, const BoundaryScalars& a, double mu,
                                const BoundaryFrame* frame);
ScalarField solve_pressure_ns(const VectorField& u, const BoundaryScalars& a, double mu, const BoundaryFrame* frame);
ScalarField solve_pressure_euler(const VectorField& u, const BoundaryFrame* frame);
// Same problem for the advecting field beta + w.
ScalarField solve_pressure_linearized(const VectorField& beta, const VectorField& w, const BoundaryFrame* frame);
// Delta q = 0, d q / d nu = -mu d a / ds.
ScalarField solve_harmonic_q(const BoundaryScalars& a, double mu, const BoundaryFrame& frame);

// Delta phi = div f, d phi / d nu = <f, nu>; returns ||grad phi|| / ||f||.
double check_solonnikov(const VectorField& f);

// Finite-volume pieces shared with the streamfunction solver.
//   fv_laplacian: A phi = sum over interior faces of face flux, so
//     A phi + (d phi/d nu) dS = integral of Delta phi over the control volume.
//   fv_face_flux: net outflow of F through interior faces of each control
//     volume; adding <F, nu> dS at wall nodes gives the integral of div F.
Eigen::SparseMatrix<double> fv_laplacian(const Grid& g);
std::vector<double> fv_face_flux(const VectorField& F);

// Reject fields whose normal trace exceeds tol relative to max(1, max |u|).
void require_tangential(const VectorField& u, const BoundaryFrame& frame, double tol, const char* what);

}  // namespace vortibc
