#include "vortibc/linparab.hpp"

#include <algorithm>
#include <cmath>

#include "vortibc/elliptic.hpp"

namespace vortibc {

namespace {

double sq(double x) { return x * x; }

const VectorField& at_or_zero(const VectorHistory& h, std::size_t n, const VectorField& zero) {
  return h.size() == 0 ? zero : h[n];
}

void check_histories(const VectorHistory& w, const VectorHistory& beta) {
  if (w.size() < 2) throw Error(ErrorCode::InvalidSpec, "w needs at least two snapshots");
  if (!(w.dt > 0.0)) throw Error(ErrorCode::InvalidSpec, "history step must be positive");
  if (beta.size() == 0) return;
  if (beta.size() != w.size() || std::abs(beta.dt - w.dt) > 1e-14 * w.dt || beta[0].grid != w[0].grid)
    throw Error(ErrorCode::InvalidSpec, "beta and w must share grid, step and snapshot count");
  if (max_abs(beta[0]) > 1e-12 * std::max(1.0, max_abs(w[0])))
    throw Error(ErrorCode::InvalidSpec, "beta(0) must vanish");
}

}  // namespace

VectorHistory apply_velocity_map(const VelocityMapInput& in) {
  check_histories(in.w, in.beta);
  const GridPtr& g = in.w[0].grid;
  FramePtr frame = boundary_frame_or_null(g);
  const double dt = in.w.dt, h = g->min_spacing();
  std::shared_ptr<const ImplicitVectorDiffusion> D = in.diffusion;
  if (!D || D->grid() != g || std::abs(D->mu_dt() - in.mu * dt) > 1e-14 * in.mu * dt || D->theta() != 1.0)
    D = std::make_shared<const ImplicitVectorDiffusion>(g, in.mu * dt);
  const BoundaryScalars wall_zero(frame ? frame->size() : 0, 0.0);
  const VectorField zero(g);

  VectorHistory out;
  out.t0 = in.w.t0;
  out.dt = dt;
  VectorField v = in.v0.size() == 0 ? zero : in.v0;
  out.snapshots.push_back(v);
  for (std::size_t n = 0; n + 1 < in.w.size(); ++n) {
    const VectorField& beta = at_or_zero(in.beta, n, zero);
    const VectorField X = beta + in.w[n];
    const double cfl = dt * max_speed(X) / h;
    if (cfl > kAdvectiveCfl)
      throw Error(ErrorCode::CFLViolation, "advective CFL " + std::to_string(cfl) + " exceeds " + std::to_string(kAdvectiveCfl));
    const ScalarField p = solve_pressure_linearized(beta, in.w[n], frame.get());
    VectorField rhs = advect(X, v + in.w[n]) + grad(p);
    VectorField b = v;
    axpy(-dt, rhs, b);
    v = D->solve(b, wall_zero);
    if (!all_finite(v)) throw Error(ErrorCode::SolverDiverged, "velocity map produced non-finite values");
    out.snapshots.push_back(v);
  }
  return out;
}

DiagnosticsRecord TheoremDiagnostics::record() const {
  DiagnosticsRecord r({"t", "F", "Q", "v_psi", "grad_g_q", "time_terms", "n_bw"});
  for (std::size_t n = 0; n < t.size(); ++n) r.add({t[n], F[n], Q[n], v_psi[n], grad_g_q[n], time_terms[n], n_bw[n]});
  return r;
}

TheoremDiagnostics compute_F(const VectorHistory& v, const VectorHistory& beta, const VectorHistory& w,
                             const BoundaryFrame* frame) {
  if (v.size() < 3) throw Error(ErrorCode::MissingTimeDerivative, "compute_F needs at least three snapshots");
  check_histories(w, beta);
  if (v.size() != w.size()) throw Error(ErrorCode::InvalidSpec, "v and w must share snapshot count");
  const GridPtr& g = w[0].grid;
  const VectorField zero(g);
  TheoremDiagnostics d;
  double Q = 0.0, prev = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    const VectorField& b = at_or_zero(beta, n, zero);
    const VectorField vt = v.derivative(n);
    const VectorField psi = curl_scalar(curl2d(v[n]));
    const ScalarField q = solve_pressure_pair(b + w[n], b - v[n], {}, 0.0, frame);
    const ScalarField gd = div(v[n]) - q;
    const VectorField bt = beta.size() == 0 ? zero : beta.derivative(n);
    const VectorField wt = w.derivative(n);
    const double nbw = sq(n_norm(b, &bt)) + sq(n_norm(w[n], &wt));
    d.t.push_back(v.time(n));
    d.v_psi.push_back(sq(l2(v[n])) + sq(l2(psi)));
    d.grad_g_q.push_back(sq(l2(grad(gd))) + sq(l2(grad(q))));
    d.time_terms.push_back(sq(l2(vt)) + sq(l2(div(vt))) + sq(l2(curl2d(vt))));
    d.F.push_back(d.v_psi.back() + d.grad_g_q.back() + d.time_terms.back());
    if (n > 0) Q += 0.5 * v.dt * (prev + 1.0 + nbw);
    prev = 1.0 + nbw;
    d.Q.push_back(Q);
    d.n_bw.push_back(nbw);
  }
  return d;
}

double initial_F(const VectorField& u0, const BoundaryFrame* frame) {
  const VectorField N = advect(u0, u0);
  const ScalarField p0 = solve_pressure_euler(u0, frame);
  return sq(l2(N + grad(p0))) + sq(l2(curl2d(N)));
}

namespace {

// e^{C2 Q(t)} (F(0) + int_0^t e^{-C2 Q(s)} f(s) ds), accumulated without
// forming e^{C2 Q} on its own.
std::vector<double> gronwall_bound(const TheoremDiagnostics& d, double C2) {
  std::vector<double> out(d.t.size());
  if (d.t.empty()) return out;
  double I = 0.0;
  out[0] = d.F[0];
  for (std::size_t n = 1; n < d.t.size(); ++n) {
    const double dt = d.t[n] - d.t[n - 1];
    const double growth = std::exp(C2 * (d.Q[n] - d.Q[n - 1]));
    const double f0 = sq(1.0 + d.n_bw[n - 1]), f1 = sq(1.0 + d.n_bw[n]);
    I = growth * (I + 0.5 * dt * f0) + 0.5 * dt * f1;
    out[n] = std::exp(C2 * d.Q[n]) * d.F[0] + I;
  }
  return out;
}

}  // namespace

GronwallCheck check_gronwall_regression(const TheoremDiagnostics& d, double C1, double C2) {
  GronwallCheck c;
  const std::vector<double> b = gronwall_bound(d, C2);
  for (std::size_t n = 0; n < b.size(); ++n) {
    const double rhs = C1 * b[n];
    const double ratio = rhs > 0.0 ? d.F[n] / rhs : (d.F[n] > 0.0 ? INFINITY : 0.0);
    if (ratio > c.worst_ratio || c.worst_index < 0) {
      c.worst_ratio = ratio;
      c.worst_index = static_cast<int>(n);
    }
    if (d.F[n] > rhs) c.holds = false;
  }
  return c;
}

double calibrate_gronwall_C1(const TheoremDiagnostics& d, double C2) {
  const std::vector<double> b = gronwall_bound(d, C2);
  double C1 = 0.0;
  for (std::size_t n = 0; n < b.size(); ++n)
    if (b[n] > 0.0) C1 = std::max(C1, d.F[n] / b[n]);
  return C1;
}

namespace {

std::vector<double> differential_ratio(const TheoremDiagnostics& d) {
  const std::size_t m = d.t.size();
  std::vector<double> r(m, 0.0);
  if (m < 3) throw Error(ErrorCode::MissingTimeDerivative, "differential check needs three snapshots");
  const double dt = d.t[1] - d.t[0];
  for (std::size_t n = 0; n < m; ++n) {
    double dF;
    if (n == 0)
      dF = (-1.5 * d.F[0] + 2.0 * d.F[1] - 0.5 * d.F[2]) / dt;
    else if (n == m - 1)
      dF = (1.5 * d.F[m - 1] - 2.0 * d.F[m - 2] + 0.5 * d.F[m - 3]) / dt;
    else
      dF = (d.F[n + 1] - d.F[n - 1]) / (2.0 * dt);
    const double N = d.n_bw[n];
    r[n] = dF / ((N + 1.0) * (d.F[n] + 1.0 + N));
  }
  return r;
}

}  // namespace

GronwallCheck check_gronwall_differential(const TheoremDiagnostics& d, double C) {
  GronwallCheck c;
  const std::vector<double> r = differential_ratio(d);
  for (std::size_t n = 0; n < r.size(); ++n) {
    const double ratio = r[n] / C;
    if (c.worst_index < 0 || ratio > c.worst_ratio) {
      c.worst_ratio = ratio;
      c.worst_index = static_cast<int>(n);
    }
    if (ratio > 1.0) c.holds = false;
  }
  return c;
}

double calibrate_gronwall_differential(const TheoremDiagnostics& d) {
  const std::vector<double> r = differential_ratio(d);
  return std::max(0.0, *std::max_element(r.begin(), r.end()));
}

}  // namespace vortibc
