#include "vortibc/stokes.hpp"

#include <algorithm>
#include <cmath>

#include "vortibc/diffusion.hpp"
#include "vortibc/elliptic.hpp"

namespace vortibc {

namespace {

ScalarField component(const VectorField& u, int c) {
  ScalarField f(u.grid);
  f.v = c == 0 ? u.x : u.y;
  return f;
}

double max_diff(const BoundaryScalars& a, const BoundaryScalars& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

BoundaryScalars data_at(const BoundaryData& a, const BoundaryFrame* frame, double t) {
  if (!frame) return {};
  if (!a) return BoundaryScalars(frame->size(), 0.0);
  BoundaryScalars v = a(t);
  if (static_cast<int>(v.size()) != frame->size())
    throw Error(ErrorCode::InvalidSpec, "boundary data size does not match the boundary");
  return v;
}

double boundary_sq(const BoundaryFrame* frame, const BoundaryScalars& a) {
  if (!frame) return 0.0;
  BoundaryScalars s(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] * a[k];
  return surface_integrate(*frame, s);
}

}  // namespace

int time_steps(double T, double& dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw Error(ErrorCode::InvalidSpec, "T and dt must be positive");
  if (dt > T * (1.0 + 1e-12)) throw Error(ErrorCode::InvalidSpec, "dt exceeds T");
  const int n = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
  dt = T / n;
  return n;
}

StokesResult solve_stokes(const StokesRun& run) {
  const GridPtr& g = run.grid;
  if (!g || run.u0.size() != g->size()) throw Error(ErrorCode::InvalidSpec, "initial field does not match the grid");
  if (run.mu < 0.0) throw Error(ErrorCode::InvalidSpec, "negative viscosity");
  if (run.record_stride < 1) throw Error(ErrorCode::InvalidSpec, "record stride must be positive");
  FramePtr frame = boundary_frame_or_null(g);
  if (frame) require_tangential(run.u0, *frame, 1e-6, "initial velocity");

  double dt = run.dt;
  if (dt == 0.0) dt = std::min(std::pow(g->min_spacing(), 2), run.T / 100.0);
  const int steps = time_steps(run.T, dt);
  const double theta = run.scheme == TimeScheme::BackwardEuler ? 1.0 : 0.5;
  const ImplicitVectorDiffusion D(g, run.mu * dt, theta);

  StokesResult res;
  res.dt = dt;
  res.steps = steps;
  res.w.dt = res.q.dt = dt * run.record_stride;
  res.diag = DiagnosticsRecord({"t", "l2", "h1", "h2", "div_l2", "max_normal", "max_vort_err"});

  auto harmonic = [&](double t) {
    if (!frame || run.mu == 0.0) return ScalarField(g);
    return solve_harmonic_q(data_at(run.a, frame.get(), t), run.mu, *frame);
  };
  auto record = [&](const VectorField& w, const ScalarField& q, double t) {
    res.w.snapshots.push_back(w);
    res.q.snapshots.push_back(q);
    double un = 0.0, err = 0.0;
    if (frame) {
      un = max_abs(normal_component(w, *frame));
      err = max_diff(trace(curl2d(w), *frame), data_at(run.a, frame.get(), t));
    }
    res.diag.add({t, l2(w), h1(w), h2(w), l2(div(w)), un, err});
  };

  VectorField w = run.u0;
  ScalarField q = harmonic(0.0);
  record(w, q, 0.0);
  for (int n = 0; n < steps; ++n) {
    const double t = n * dt;
    VectorField b = w - dt * grad(q);
    if (theta != 1.0) axpy((1.0 - theta) * run.mu * dt, D.apply_laplacian(w), b);
    w = D.solve(b, data_at(run.a, frame.get(), t + dt));
    if (!all_finite(w)) throw Error(ErrorCode::SolverDiverged, "Stokes step produced non-finite values");
    q = harmonic(t + dt);
    if ((n + 1) % run.record_stride == 0) record(w, q, t + dt);
  }
  return res;
}

DiagnosticsRecord stokes_energy_report(const VectorHistory& w, const BoundaryData& a, double mu,
                                       const BoundaryFrame* frame) {
  DiagnosticsRecord rep({"t", "g2", "diss_g", "bdy_g", "res_g", "h2", "diss_h", "bdy_h", "res_h"});
  const double dt = w.dt;
  double G0 = 0.0, H0 = 0.0;
  double int_dg = 0.0, int_bg = 0.0, int_dh = 0.0, int_bh = 0.0;
  double prev[4] = {0, 0, 0, 0};
  for (std::size_t n = 0; n < w.size(); ++n) {
    const double t = w.time(n);
    const ScalarField g = curl2d(w[n]);
    const VectorField h = curl_scalar(g);
    const double G = std::pow(l2(g), 2), H = std::pow(l2(h), 2);
    const double dg = H, dh = std::pow(l2(curl2d(h)), 2);
    double bg = 0.0, bh = 0.0;
    if (frame) {
      const BoundaryScalars dn = normal_derivative(g, *frame);
      const BoundaryScalars av = data_at(a, frame, t);
      const BoundaryScalars ap = data_at(a, frame, t + dt), am = data_at(a, frame, t - dt);
      BoundaryScalars s1(dn.size()), s2(dn.size());
      for (std::size_t k = 0; k < dn.size(); ++k) {
        s1[k] = av[k] * dn[k];
        s2[k] = (ap[k] - am[k]) / (2.0 * dt) * dn[k];
      }
      bg = surface_integrate_all(*frame, s1);
      bh = surface_integrate_all(*frame, s2);
    }
    const double cur[4] = {dg, bg, dh, bh};
    if (n == 0) {
      G0 = G;
      H0 = H;
    } else {
      int_dg += 0.5 * dt * (prev[0] + cur[0]);
      int_bg += 0.5 * dt * (prev[1] + cur[1]);
      int_dh += 0.5 * dt * (prev[2] + cur[2]);
      int_bh += 0.5 * dt * (prev[3] + cur[3]);
    }
    std::copy(cur, cur + 4, prev);
    rep.add({t, G, 2.0 * mu * int_dg, 2.0 * mu * int_bg, G + 2.0 * mu * int_dg - G0 - 2.0 * mu * int_bg, H,
             2.0 * mu * int_dh, 2.0 * int_bh, H + 2.0 * mu * int_dh - H0 - 2.0 * int_bh});
  }
  return rep;
}

double h3_sq(const VectorField& w) {
  double s = std::pow(h2(w), 2);
  for (int c = 0; c < 2; ++c) s += hess_sq(grad(component(w, c)));
  return s;
}

Prop43Report verify_prop43(const StokesRun& base, const std::vector<double>& mu_list, bool time_dependent) {
  Prop43Report rep;
  rep.time_dependent = time_dependent;
  FramePtr frame = boundary_frame_or_null(base.grid);
  const double u0n = std::pow(h2(base.u0), 2);
  double lo = 0.0, hi = 0.0;
  for (double mu : mu_list) {
    StokesRun run = base;
    run.mu = mu;
    const StokesResult r = solve_stokes(run);
    Prop43Row row;
    row.mu = mu;
    double a2 = 0.0, at2 = 0.0, prev_h3 = 0.0, prev_a = 0.0, prev_at = 0.0;
    const double dt = r.w.dt;
    for (std::size_t n = 0; n < r.w.size(); ++n) {
      const double t = r.w.time(n);
      row.sup_h2_sq = std::max(row.sup_h2_sq, std::pow(h2(r.w[n]), 2));
      const double h3 = h3_sq(r.w[n]);
      const double an = boundary_sq(frame.get(), data_at(base.a, frame.get(), t));
      BoundaryScalars da = data_at(base.a, frame.get(), t + dt);
      const BoundaryScalars am = data_at(base.a, frame.get(), t - dt);
      for (std::size_t k = 0; k < da.size(); ++k) da[k] = (da[k] - am[k]) / (2.0 * dt);
      const double atn = boundary_sq(frame.get(), da);
      if (n > 0) {
        row.int_h3_sq += 0.5 * dt * (prev_h3 + h3);
        a2 += 0.5 * dt * (prev_a + an);
        at2 += 0.5 * dt * (prev_at + atn);
      }
      prev_h3 = h3;
      prev_a = an;
      prev_at = atn;
    }
    double lhs;
    if (time_dependent) {
      row.data = u0n + a2 + at2;
      lhs = std::sqrt(row.sup_h2_sq) + row.int_h3_sq;
    } else {
      row.data = u0n + mu * a2;
      lhs = row.sup_h2_sq + mu * row.int_h3_sq;
    }
    row.ratio = row.data > 0.0 ? lhs / row.data : (lhs == 0.0 ? 0.0 : INFINITY);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    const double s = std::sqrt(row.sup_h2_sq);
    lo = rep.rows.empty() ? s : std::min(lo, s);
    hi = std::max(hi, s);
    rep.rows.push_back(row);
  }
  rep.sup_h2_variation = lo > 0.0 ? hi / lo : (hi == 0.0 ? 1.0 : INFINITY);
  return rep;
}

}  // namespace vortibc
