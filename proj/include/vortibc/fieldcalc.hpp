#pragma once

#include <vector>

#include "vortibc/field.hpp"

namespace vortibc {

// Coordinate derivatives d/dxi1, d/dxi2 and their second derivatives.
// Centered inside, second-order one-sided at walls, wrapped on periodic axes.
std::vector<double> d_xi1(const Grid& g, const std::vector<double>& f);
std::vector<double> d_xi2(const Grid& g, const std::vector<double>& f);
std::vector<double> d2_xi1(const Grid& g, const std::vector<double>& f);
std::vector<double> d2_xi2(const Grid& g, const std::vector<double>& f);
// Mixed derivative: the wall-normal difference is applied last so that its
// one-sided stencil only ever sees a smooth error.
std::vector<double> d_xi12(const Grid& g, const std::vector<double>& f);

// Components along the coordinate frame (e1, e2).
void to_frame(const VectorField& u, std::vector<double>& u1, std::vector<double>& u2);
VectorField from_frame(const GridPtr& g, const std::vector<double>& u1, const std::vector<double>& u2);

VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& u);
ScalarField curl2d(const VectorField& u);          // d1 u2 - d2 u1
VectorField curl_scalar(const ScalarField& w);     // (d2 w, -d1 w)
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);       // componentwise, Cartesian

struct Hessian {
  ScalarField xx, xy, yy;
};
Hessian hessian(const ScalarField& f);

// (X . grad) Y, componentwise in Cartesian components.
VectorField advect(const VectorField& X, const VectorField& Y);

BoundaryScalars trace(const ScalarField& f, const BoundaryFrame& frame);
BoundaryVectors trace(const VectorField& u, const BoundaryFrame& frame);
BoundaryScalars normal_component(const VectorField& u, const BoundaryFrame& frame);
BoundaryScalars tangential_part(const VectorField& u, const BoundaryFrame& frame);
// d/ds along tau, periodic centered differences on each component.
BoundaryScalars surface_curl(const BoundaryScalars& a, const BoundaryFrame& frame);
// <grad f, nu> with the one-sided wall stencil.
BoundaryScalars normal_derivative(const ScalarField& f, const BoundaryFrame& frame);

double integrate(const ScalarField& f);
double mean(const ScalarField& f);
double dot_l2(const VectorField& a, const VectorField& b);
double l2(const ScalarField& f);
double l2(const VectorField& u);
double h1(const ScalarField& f);
double h1(const VectorField& u);
double h2(const ScalarField& f);
double h2(const VectorField& u);
// Squared seminorms: sum of |grad component|^2 and |hessian component|^2.
double grad_sq(const VectorField& u);
double hess_sq(const VectorField& u);
double n_norm(const VectorField& v, const VectorField* v_t);

double max_abs(const std::vector<double>& a);
double max_abs(const VectorField& u);
double max_speed(const VectorField& u);

}  // namespace vortibc
