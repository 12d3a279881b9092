#pragma once

#include <memory>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "vortibc/fieldcalc.hpp"

namespace vortibc {

// Implicit solve of (I - theta mu dt L) u = b for the vector Laplacian L in
// frame components, with wall rows replaced by the kinematic condition
// u_n = 0 and the vorticity condition omega(u) = a, the latter written with
// the one-sided wall-normal difference.
//
// The radial part of L on polar grids is the conservative form
// d/dr((1/r) d/dr(r u)), which annihilates c e_theta / r exactly.
class ImplicitVectorDiffusion {
 public:
  ImplicitVectorDiffusion(GridPtr grid, double mu_dt, double theta = 1.0);

  // a is indexed like the boundary frame (ignored on the torus).
  VectorField solve(const VectorField& b, const BoundaryScalars& a) const;
  // L u on interior rows; wall rows are zero.
  VectorField apply_laplacian(const VectorField& u) const;

  const GridPtr& grid() const { return grid_; }
  double mu_dt() const { return mu_dt_; }
  double theta() const { return theta_; }

 private:
  bool wall_row(int i, int j) const;

  GridPtr grid_;
  FramePtr frame_;
  double mu_dt_;
  double theta_;
  Eigen::SparseMatrix<double> L_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

}  // namespace vortibc
