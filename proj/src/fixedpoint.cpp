#include "vortibc/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vortibc/elliptic.hpp"
#include "vortibc/log.hpp"

namespace vortibc {

namespace {

// Relative divergence accepted for sampled initial data.
constexpr double kInitialDivTol = 1e-2;

VectorHistory difference(const VectorHistory& a, const VectorHistory& b) {
  VectorHistory d = a;
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = a[n] - b[n];
  return d;
}

ScalarField centered(ScalarField f) {
  const double m = mean(f);
  for (double& x : f.v) x -= m;
  return f;
}

BoundaryScalars data_at(const BoundaryData& a, const BoundaryFrame* frame, double t) {
  if (!frame) return {};
  if (!a) return BoundaryScalars(frame->size(), 0.0);
  return a(t);
}

}  // namespace

void validate(const PicardConfig& cfg) {
  if (!(cfg.tol_fix > 0.0)) throw Error(ErrorCode::InvalidSpec, "tol_fix must be positive");
  if (cfg.max_iter < 2) throw Error(ErrorCode::InvalidSpec, "max_iter must be at least 2");
  if (cfg.contraction_window < 1) throw Error(ErrorCode::InvalidSpec, "contraction_window must be positive");
}

DiagnosticsRecord NSSolution::trace() const {
  DiagnosticsRecord r({"iter", "delta_WT", "ratio"});
  for (std::size_t k = 0; k < delta.size(); ++k) r.add({static_cast<double>(k + 1), delta[k], ratio[k]});
  return r;
}

double wt_norm(const VectorHistory& v) {
  double m = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    const VectorField vt = v.derivative(n);
    m = std::max(m, n_norm(v[n], &vt));
  }
  return m;
}

NSSolution picard_solve(const StokesRun& run, const PicardConfig& cfg) {
  validate(cfg);
  if (run.record_stride != 1) throw Error(ErrorCode::InvalidSpec, "Picard iteration needs every Stokes step");
  const GridPtr& g = run.grid;
  if (!g || run.u0.size() != g->size()) throw Error(ErrorCode::InvalidSpec, "initial field does not match the grid");
  FramePtr frame = boundary_frame_or_null(g);
  const double grad_scale = h1(run.u0);
  if (l2(div(run.u0)) > kInitialDivTol * std::max(grad_scale, 1e-300) && grad_scale > 0.0)
    throw Error(ErrorCode::InvalidSpec, "initial velocity is not divergence free");
  if (frame) {
    const BoundaryScalars om = trace(curl2d(run.u0), *frame);
    const BoundaryScalars a0 = data_at(run.a, frame.get(), 0.0);
    double mis = 0.0;
    for (std::size_t k = 0; k < om.size(); ++k) mis = std::max(mis, std::abs(om[k] - a0[k]));
    if (mis > 1e-6 * std::max(1.0, max_abs(om)))
      log(LogLevel::Warn, "initial vorticity differs from a(0) on the walls by " + std::to_string(mis) +
                              "; the Stokes part forms an initial layer");
  }

  const StokesResult stokes = solve_stokes(run);
  NSSolution sol;
  sol.mu = run.mu;
  sol.w = stokes.w;
  sol.q = stokes.q;

  VelocityMapInput in;
  in.w = stokes.w;
  in.mu = run.mu;
  in.diffusion = std::make_shared<const ImplicitVectorDiffusion>(g, run.mu * stokes.w.dt);

  VectorHistory v;  // empty: v = 0
  int above = 0;
  for (int k = 1;; ++k) {
    in.beta = v;
    VectorHistory next = apply_velocity_map(in);
    const double d = v.size() == 0 ? wt_norm(next) : wt_norm(difference(next, v));
    const double r = sol.delta.empty() ? 0.0 : (sol.delta.back() > 0.0 ? d / sol.delta.back() : INFINITY);
    sol.delta.push_back(d);
    sol.ratio.push_back(r);
    sol.iterations = k;
    v = std::move(next);
    std::ostringstream msg;
    msg << "picard iter " << k << " delta " << d << " ratio " << r;
    log(LogLevel::Debug, msg.str());
    if (d <= cfg.tol_fix) break;
    above = (k > 1 && r >= 1.0) ? above + 1 : 0;
    if (above >= cfg.contraction_window)
      throw Error(ErrorCode::NoContraction, "Picard ratios stayed >= 1 for " + std::to_string(above) +
                                                " iterations (last " + std::to_string(r) + "); reduce T");
    if (k >= cfg.max_iter)
      throw Error(ErrorCode::MaxIterExceeded, "Picard iteration did not reach tol_fix in " +
                                                  std::to_string(cfg.max_iter) + " iterations");
  }

  sol.v = v;
  sol.u = v;
  sol.p.dt = v.dt;
  sol.p.t0 = v.t0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    sol.u[n] = v[n] + sol.w[n];
    sol.p.snapshots.push_back(solve_pressure_linearized(v[n], sol.w[n], frame.get()));
  }
  return sol;
}

IncompressibilityReport verify_incompressibility(const NSSolution& sol) {
  IncompressibilityReport r;
  for (std::size_t n = 0; n < sol.v.size(); ++n) {
    const double dv = l2(div(sol.v[n]));
    r.div_v.push_back(dv);
    r.max_div_v = std::max(r.max_div_v, dv);
    if (n < sol.u.size()) r.max_div_u = std::max(r.max_div_u, l2(div(sol.u[n])));
  }
  return r;
}

NSResidualReport ns_residual(const NSSolution& sol, const VectorField& u0, const BoundaryData& a,
                             const BoundaryFrame* frame) {
  NSResidualReport r;
  if (sol.u.size() == 0) return r;
  const GridPtr& g = sol.u[0].grid;
  r.initial = l2(sol.u[0] - u0);
  for (std::size_t n = 0; n < sol.u.size(); ++n) {
    const VectorField& u = sol.u[n];
    const BoundaryScalars an = data_at(a, frame, sol.u.time(n));
    const ScalarField p = solve_pressure_ns(u, an, sol.mu, frame);
    VectorField res = sol.u.derivative(n) + advect(u, u) + grad(p);
    axpy(-sol.mu, laplacian(u), res);
    for (int i = 0; i < g->n1; ++i)
      for (int j = 0; j < g->n2; ++j)
        if (g->on_boundary(i, j)) res.set(g->index(i, j), {0.0, 0.0});
    r.interior = std::max(r.interior, l2(res));
    if (frame) {
      r.max_normal = std::max(r.max_normal, max_abs(normal_component(u, *frame)));
      const BoundaryScalars om = trace(curl2d(u), *frame);
      for (std::size_t k = 0; k < om.size(); ++k) r.max_vorticity = std::max(r.max_vorticity, std::abs(om[k] - an[k]));
    }
  }
  return r;
}

double compare_pressures(const NSSolution& sol, const BoundaryData& a, const BoundaryFrame* frame) {
  double m = 0.0;
  for (std::size_t n = 0; n < sol.u.size(); ++n) {
    const ScalarField full = solve_pressure_ns(sol.u[n], data_at(a, frame, sol.u.time(n)), sol.mu, frame);
    ScalarField split = sol.p[n];
    if (n < sol.q.size()) split = split + sol.q[n];
    m = std::max(m, l2(centered(full) - centered(split)));
  }
  return m;
}

}  // namespace vortibc
