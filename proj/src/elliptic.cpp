#include "vortibc/elliptic.hpp"

#include <cmath>
#include <list>
#include <memory>
#include <mutex>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "vortibc/log.hpp"

namespace vortibc {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Integral of 1/R across the control volume of row i.
double inverse_scale_extent(const Grid& g, int i) {
  const double lo = g.cell_lo1(i), hi = g.cell_hi1(i);
  return g.polar ? std::log(hi / lo) : hi - lo;
}

double face_scale1(const Grid& g, int i) { return g.polar ? g.xi1[i] + 0.5 * g.h1 : 1.0; }

Vec2 face_e2(const Grid& g, int j) {
  if (!g.polar) return {0.0, 1.0};
  const double t = g.xi2[j] + 0.5 * g.h2;
  return {-std::sin(t), std::cos(t)};
}

// Factorization of -A with node 0 removed, which is SPD.
struct Factor {
  GridPtr grid;
  SpMat A;
  Eigen::SimplicialLDLT<SpMat> ldlt;
};

std::shared_ptr<const Factor> factor_for(const GridPtr& grid) {
  static std::mutex mu;
  static std::list<std::shared_ptr<const Factor>> cache;
  constexpr std::size_t kCapacity = 6;
  std::lock_guard<std::mutex> lock(mu);
  for (auto it = cache.begin(); it != cache.end(); ++it)
    if ((*it)->grid == grid) {
      cache.splice(cache.begin(), cache, it);
      return cache.front();
    }
  auto f = std::make_shared<Factor>();
  f->grid = grid;
  f->A = fv_laplacian(*grid);
  const int n = grid->size();
  const SpMat reduced = -f->A.bottomRightCorner(n - 1, n - 1);
  f->ldlt.compute(reduced);
  if (f->ldlt.info() != Eigen::Success) throw Error(ErrorCode::SolverDiverged, "Neumann factorization failed");
  cache.push_front(f);
  if (cache.size() > kCapacity) cache.pop_back();
  return f;
}

double sum_abs(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += std::abs(x);
  return s;
}

}  // namespace

SpMat fv_laplacian(const Grid& g) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(5 * g.size());
  auto link = [&](int a, int b, double c) {
    t.emplace_back(a, b, c);
    t.emplace_back(b, a, c);
    t.emplace_back(a, a, -c);
    t.emplace_back(b, b, -c);
  };
  const int last1 = g.periodic1 ? g.n1 : g.n1 - 1;
  const int last2 = g.periodic2 ? g.n2 : g.n2 - 1;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      if (i < last1) link(k, g.index((i + 1) % g.n1, j), face_scale1(g, i) * g.cell_len2(j) / g.h1);
      if (j < last2) link(k, g.index(i, (j + 1) % g.n2), inverse_scale_extent(g, i) / g.h2);
    }
  SpMat A(g.size(), g.size());
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

std::vector<double> fv_face_flux(const VectorField& F) {
  const Grid& g = *F.grid;
  std::vector<double> out(g.size(), 0.0);
  const int last1 = g.periodic1 ? g.n1 : g.n1 - 1;
  const int last2 = g.periodic2 ? g.n2 : g.n2 - 1;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.index(i, j);
      if (i < last1) {
        const int m = g.index((i + 1) % g.n1, j);
        const double fn = 0.5 * dot(F.at(k) + F.at(m), g.e1(j)) * face_scale1(g, i) * g.cell_len2(j);
        out[k] += fn;
        out[m] -= fn;
      }
      if (j < last2) {
        const int m = g.index(i, (j + 1) % g.n2);
        const double fn = 0.5 * dot(F.at(k) + F.at(m), face_e2(g, j)) * (g.cell_hi1(i) - g.cell_lo1(i));
        out[k] += fn;
        out[m] -= fn;
      }
    }
  return out;
}

void require_tangential(const VectorField& u, const BoundaryFrame& frame, double tol, const char* what) {
  const double un = max_abs(normal_component(u, frame));
  if (un > tol * std::max(1.0, max_speed(u))) {
    std::ostringstream os;
    os << what << " has normal boundary component " << un;
    throw Error(ErrorCode::BCViolation, os.str());
  }
}

ScalarField solve_neumann(const NeumannProblem& prob) {
  const GridPtr& gp = prob.grid;
  const Grid& g = *gp;
  const int n = g.size();
  FramePtr frame = boundary_frame_or_null(gp);
  if (!frame && !prob.flux.empty()) throw Error(ErrorCode::InvalidSpec, "wall flux given on the torus");
  if (frame && static_cast<int>(prob.flux.size()) != frame->size())
    throw Error(ErrorCode::InvalidSpec, "wall flux size does not match the boundary");

  Vec b(n);
  if (!prob.cell_source.empty()) {
    for (int k = 0; k < n; ++k) b[k] = prob.cell_source[k];
  } else if (!prob.source.v.empty()) {
    for (int k = 0; k < n; ++k) b[k] = g.weight[k] * prob.source[k];
  } else {
    b.setZero();
  }
  double scale = 0.0;
  for (int k = 0; k < n; ++k) scale += std::abs(b[k]);
  double wall = 0.0;
  if (frame)
    for (int k = 0; k < frame->size(); ++k) {
      const double q = prob.flux[k] * frame->nodes[k].dS;
      b[frame->nodes[k].node] -= q;
      scale += std::abs(q);
      wall += frame->nodes[k].dS;
    }
  if (scale == 0.0) return ScalarField(gp);

  const double mismatch = b.sum();
  if (std::abs(mismatch) > prob.tol_compat * scale) {
    std::ostringstream os;
    os << "mean mismatch " << mismatch << " exceeds " << prob.tol_compat << " x data scale " << scale;
    throw Error(ErrorCode::IncompatibleData, os.str());
  }
  if (mismatch != 0.0) {
    if (std::abs(mismatch) > 1e-12 * scale) {
      std::ostringstream os;
      os << "Neumann compatibility repair: removed mismatch " << mismatch << " (scale " << scale << ")";
      log(LogLevel::Debug, os.str());
    }
    if (frame) {
      for (const BoundaryNode& bn : frame->nodes) b[bn.node] -= mismatch * bn.dS / wall;
    } else {
      const double area = g.area();
      for (int k = 0; k < n; ++k) b[k] -= mismatch * g.weight[k] / area;
    }
  }

  const auto f = factor_for(gp);
  const Vec x = f->ldlt.solve(-b.tail(n - 1));
  if (f->ldlt.info() != Eigen::Success) throw Error(ErrorCode::SolverDiverged, "Neumann solve failed");
  Vec phi(n);
  phi[0] = 0.0;
  phi.tail(n - 1) = x;
  const double res = (f->A * phi - b).norm();
  if (!(res <= 1e-10 * b.norm())) {
    std::ostringstream os;
    os << "Neumann residual " << res << " relative to " << b.norm();
    throw Error(ErrorCode::SolverDiverged, os.str());
  }
  ScalarField out(gp);
  for (int k = 0; k < n; ++k) out[k] = phi[k];
  const double m = mean(out);
  for (double& v : out.v) v -= m;
  return out;
}

ScalarField solve_pressure_pair(const VectorField& X, const VectorField& Y, const BoundaryScalars& a, double mu,
                                const BoundaryFrame* frame) {
  const VectorField N = advect(X, Y);
  NeumannProblem p;
  p.grid = X.grid;
  p.tol_compat = kPressureCompatTol;
  p.cell_source = fv_face_flux(N);
  for (double& c : p.cell_source) c = -c;
  if (frame) {
    require_tangential(X, *frame, 1e-6, "advecting velocity");
    require_tangential(Y, *frame, 1e-6, "advected velocity");
    const BoundaryScalars nn = normal_component(N, *frame);
    const BoundaryScalars xt = tangential_part(X, *frame), yt = tangential_part(Y, *frame);
    p.flux.assign(frame->size(), 0.0);
    BoundaryScalars da;
    if (mu != 0.0) da = surface_curl(a, *frame);
    for (int k = 0; k < frame->size(); ++k) {
      const BoundaryNode& bn = frame->nodes[k];
      p.cell_source[bn.node] -= nn[k] * bn.dS;
      p.flux[k] = bn.h * xt[k] * yt[k] - (mu != 0.0 ? mu * da[k] : 0.0);
    }
  }
  if (sum_abs(p.cell_source) == 0.0 && sum_abs(p.flux) == 0.0) return ScalarField(X.grid);
  return solve_neumann(p);
}

ScalarField solve_pressure_ns(const VectorField& u, const BoundaryScalars& a, double mu, const BoundaryFrame* frame) {
  return solve_pressure_pair(u, u, a, mu, frame);
}

ScalarField solve_pressure_euler(const VectorField& u, const BoundaryFrame* frame) {
  return solve_pressure_ns(u, {}, 0.0, frame);
}

ScalarField solve_pressure_linearized(const VectorField& beta, const VectorField& w, const BoundaryFrame* frame) {
  return solve_pressure_ns(beta + w, {}, 0.0, frame);
}

ScalarField solve_harmonic_q(const BoundaryScalars& a, double mu, const BoundaryFrame& frame) {
  NeumannProblem p;
  p.grid = frame.grid;
  p.source = ScalarField(frame.grid);
  p.flux = surface_curl(a, frame);
  for (double& x : p.flux) x *= -mu;
  return solve_neumann(p);
}

double check_solonnikov(const VectorField& f) {
  const double fn = l2(f);
  if (fn == 0.0) throw Error(ErrorCode::DegenerateInput, "zero field");
  NeumannProblem p;
  p.grid = f.grid;
  // The wall terms cancel, so the data telescope to zero mean exactly; any
  // mismatch is rounding.
  p.tol_compat = 1.0;
  p.cell_source = fv_face_flux(f);
  FramePtr frame = boundary_frame_or_null(f.grid);
  if (frame) {
    p.flux = normal_component(f, *frame);
    for (int k = 0; k < frame->size(); ++k) p.cell_source[frame->nodes[k].node] += p.flux[k] * frame->nodes[k].dS;
  }
  return l2(grad(solve_neumann(p))) / fn;
}

}  // namespace vortibc
