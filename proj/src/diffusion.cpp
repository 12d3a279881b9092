#include "vortibc/diffusion.hpp"

#include <vector>

namespace vortibc {

namespace {

using Trip = Eigen::Triplet<double>;

}  // namespace

bool ImplicitVectorDiffusion::wall_row(int i, int j) const {
  const Grid& g = *grid_;
  const int ax = g.bounded_axis();
  if (ax == 0) return i == 0 || i == g.n1 - 1;
  if (ax == 1) return j == 0 || j == g.n2 - 1;
  return false;
}

ImplicitVectorDiffusion::ImplicitVectorDiffusion(GridPtr grid, double mu_dt, double theta)
    : grid_(std::move(grid)), frame_(boundary_frame_or_null(grid_)), mu_dt_(mu_dt), theta_(theta) {
  const Grid& g = *grid_;
  const int n = g.size();
  const double h1s = g.h1 * g.h1, h2s = g.h2 * g.h2;
  std::vector<Trip> lt, st;

  auto wrap1 = [&](int i) { return (i + g.n1) % g.n1; };
  auto wrap2 = [&](int j) { return (j + g.n2) % g.n2; };

  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      if (wall_row(i, j)) continue;
      const double R = g.scale(i);
      for (int c = 0; c < 2; ++c) {
        const int row = 2 * k + c;
        // Along xi1.
        if (g.polar) {
          const double rm = R - 0.5 * g.h1, rp = R + 0.5 * g.h1;
          lt.emplace_back(row, 2 * g.index(i - 1, j) + c, g.scale(i - 1) / (h1s * rm));
          lt.emplace_back(row, row, -R * (1.0 / rp + 1.0 / rm) / h1s);
          lt.emplace_back(row, 2 * g.index(i + 1, j) + c, g.scale(i + 1) / (h1s * rp));
        } else {
          lt.emplace_back(row, 2 * g.index(wrap1(i - 1), j) + c, 1.0 / h1s);
          lt.emplace_back(row, row, -2.0 / h1s);
          lt.emplace_back(row, 2 * g.index(wrap1(i + 1), j) + c, 1.0 / h1s);
        }
        // Along xi2.
        const double c2 = 1.0 / (R * R * h2s);
        lt.emplace_back(row, 2 * g.index(i, wrap2(j - 1)) + c, c2);
        lt.emplace_back(row, row, -2.0 * c2);
        lt.emplace_back(row, 2 * g.index(i, wrap2(j + 1)) + c, c2);
        // Frame rotation couples the components on polar grids.
        if (g.polar) {
          const int other = 1 - c;
          const double s = (c == 0 ? -2.0 : 2.0) / (R * R) / (2.0 * g.h2);
          lt.emplace_back(row, 2 * g.index(i, wrap2(j + 1)) + other, s);
          lt.emplace_back(row, 2 * g.index(i, wrap2(j - 1)) + other, -s);
        }
      }
    }
  L_.resize(2 * n, 2 * n);
  L_.setFromTriplets(lt.begin(), lt.end());

  for (int k = 0; k < L_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(L_, k); it; ++it)
      st.emplace_back(it.row(), it.col(), -theta_ * mu_dt_ * it.value());

  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      if (!wall_row(i, j)) {
        st.emplace_back(2 * k, 2 * k, 1.0);
        st.emplace_back(2 * k + 1, 2 * k + 1, 1.0);
        continue;
      }
      if (g.polar) {
        // u_r = 0; (1/R) d/dr(R u_theta) - (1/R) d/dtheta u_r = a.
        const int s = i == 0 ? 1 : -1;
        const double R = g.scale(i), c = s / (2.0 * g.h1 * R);
        st.emplace_back(2 * k, 2 * k, 1.0);
        const int row = 2 * k + 1;
        st.emplace_back(row, 2 * g.index(i, j) + 1, -3.0 * c * g.scale(i));
        st.emplace_back(row, 2 * g.index(i + s, j) + 1, 4.0 * c * g.scale(i + s));
        st.emplace_back(row, 2 * g.index(i + 2 * s, j) + 1, -c * g.scale(i + 2 * s));
        const double d = 1.0 / (2.0 * g.h2 * R);
        st.emplace_back(row, 2 * g.index(i, wrap2(j + 1)), -d);
        st.emplace_back(row, 2 * g.index(i, wrap2(j - 1)), d);
      } else {
        // u_y = 0; d/dx u_y - d/dy u_x = a.
        const int s = j == 0 ? 1 : -1;
        const double c = s / (2.0 * g.h2);
        st.emplace_back(2 * k + 1, 2 * k + 1, 1.0);
        const int row = 2 * k;
        st.emplace_back(row, 2 * g.index(i, j), 3.0 * c);
        st.emplace_back(row, 2 * g.index(i, j + s), -4.0 * c);
        st.emplace_back(row, 2 * g.index(i, j + 2 * s), c);
        const double d = 1.0 / (2.0 * g.h1);
        st.emplace_back(row, 2 * g.index(wrap1(i + 1), j) + 1, d);
        st.emplace_back(row, 2 * g.index(wrap1(i - 1), j) + 1, -d);
      }
    }
  Eigen::SparseMatrix<double> S(2 * n, 2 * n);
  S.setFromTriplets(st.begin(), st.end());
  S.makeCompressed();
  lu_.analyzePattern(S);
  lu_.factorize(S);
  if (lu_.info() != Eigen::Success)
    throw Error(ErrorCode::BCEnforcementFailed, "diffusion system with wall rows is singular");
}

VectorField ImplicitVectorDiffusion::solve(const VectorField& b, const BoundaryScalars& a) const {
  const Grid& g = *grid_;
  const int n = g.size();
  std::vector<double> b1, b2;
  to_frame(b, b1, b2);
  Eigen::VectorXd rhs(2 * n);
  for (int k = 0; k < n; ++k) {
    rhs[2 * k] = b1[k];
    rhs[2 * k + 1] = b2[k];
  }
  if (frame_) {
    if (static_cast<int>(a.size()) != frame_->size())
      throw Error(ErrorCode::InvalidSpec, "boundary vorticity size does not match the boundary");
    const int vort = g.polar ? 1 : 0;
    for (int m = 0; m < frame_->size(); ++m) {
      const int k = frame_->nodes[m].node;
      rhs[2 * k + vort] = a[m];
      rhs[2 * k + 1 - vort] = 0.0;
    }
  }
  const Eigen::VectorXd x = lu_.solve(rhs);
  if (lu_.info() != Eigen::Success || !x.allFinite())
    throw Error(ErrorCode::LinearSolveFailed, "implicit diffusion solve failed");
  std::vector<double> u1(n), u2(n);
  for (int k = 0; k < n; ++k) {
    u1[k] = x[2 * k];
    u2[k] = x[2 * k + 1];
  }
  return from_frame(grid_, u1, u2);
}

VectorField ImplicitVectorDiffusion::apply_laplacian(const VectorField& u) const {
  const int n = grid_->size();
  std::vector<double> u1, u2;
  to_frame(u, u1, u2);
  Eigen::VectorXd x(2 * n);
  for (int k = 0; k < n; ++k) {
    x[2 * k] = u1[k];
    x[2 * k + 1] = u2[k];
  }
  const Eigen::VectorXd y = L_ * x;
  for (int k = 0; k < n; ++k) {
    u1[k] = y[2 * k];
    u2[k] = y[2 * k + 1];
  }
  return from_frame(grid_, u1, u2);
}

}  // namespace vortibc
