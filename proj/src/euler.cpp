#include "vortibc/euler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include <Eigen/SparseLU>

#include "vortibc/elliptic.hpp"
#include "vortibc/log.hpp"

namespace vortibc {

namespace {

double sq(double x) { return x * x; }

// lap s = -omega with s = 0 on wall component 0 and s = C on component 1,
// C fixed by the circulation of component 1.  Periodic Poisson on the torus.
//
// Wall circulations are taken in finite-volume form: the flux of grad s
// through the wall face of each wall control volume is whatever closes the
// discrete balance of lap s = -omega there.  Their sum is then exactly minus
// the integral of omega, which the flux-form transport conserves, so both
// walls keep their circulation to rounding.
class StreamSolver {
 public:
  struct State {
    VectorField u;
    std::vector<double> circulation;  // per wall component
  };

  StreamSolver(const GridPtr& g, const VectorField& u0) : g_(g), frame_(boundary_frame_or_null(g)) {
    if (!frame_) {
      mean_u_ = {integrate_component(u0.x), integrate_component(u0.y)};
      mean_u_ = (1.0 / g->area()) * mean_u_;
      return;
    }
    for (const auto& c : frame_->components)
      if (c.artificial) throw Error(ErrorCode::InvalidSpec, "the Euler solver needs physical walls only (annulus or channel)");
    const int n = g->size();
    A_ = fv_laplacian(*g);
    wall_.assign(n, false);
    for (const auto& bn : frame_->nodes) wall_[bn.node] = true;
    std::vector<Eigen::Triplet<double>> t;
    for (int k = 0; k < A_.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(A_, k); it; ++it)
        if (!wall_[it.row()]) t.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < n; ++k)
      if (wall_[k]) t.emplace_back(k, k, 1.0);
    Eigen::SparseMatrix<double> M(n, n);
    M.setFromTriplets(t.begin(), t.end());
    M.makeCompressed();
    lu_.compute(M);
    if (lu_.info() != Eigen::Success) throw Error(ErrorCode::LinearSolveFailed, "streamfunction system is singular");

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    const BoundaryComponent& top = frame_->components[1];
    for (int m = top.begin; m < top.begin + top.count; ++m) rhs[frame_->nodes[m].node] = 1.0;
    unit_ = solve(rhs);
    gamma_unit_ = wall_circulation(unit_, nullptr, 1);
    target_ = circulation(u0, *frame_, 1);
    if (std::abs(gamma_unit_) < 1e-12 * std::max(1.0, std::abs(target_)))
      throw Error(ErrorCode::CirculationSystemSingular, "wall constant does not change the circulation");
  }

  State operator()(const ScalarField& omega) const {
    if (!frame_) {
      NeumannProblem p;
      p.grid = g_;
      p.source = -1.0 * omega;
      p.tol_compat = 1e-6;
      VectorField u = curl_scalar(solve_neumann(p));
      for (int k = 0; k < u.size(); ++k) u.set(k, u.at(k) + mean_u_);
      return {std::move(u), {}};
    }
    const int n = g_->size();
    Eigen::VectorXd rhs(n);
    for (int k = 0; k < n; ++k) rhs[k] = wall_[k] ? 0.0 : -omega[k] * g_->weight[k];
    ScalarField s = solve(rhs);
    const double C = (target_ - wall_circulation(s, &omega, 1)) / gamma_unit_;
    axpy(C, unit_, s);
    State st{curl_scalar(s), {}};
    for (std::size_t c = 0; c < frame_->components.size(); ++c)
      st.circulation.push_back(wall_circulation(s, &omega, static_cast<int>(c)));
    return st;
  }

 private:
  double integrate_component(const std::vector<double>& v) const {
    double s = 0.0;
    for (int k = 0; k < g_->size(); ++k) s += g_->weight[k] * v[k];
    return s;
  }
  ScalarField solve(const Eigen::VectorXd& rhs) const {
    const Eigen::VectorXd x = lu_.solve(rhs);
    if (!x.allFinite()) throw Error(ErrorCode::LinearSolveFailed, "streamfunction solve failed");
    ScalarField s(g_);
    for (int k = 0; k < g_->size(); ++k) s[k] = x[k];
    return s;
  }
  // u.tau = sigma d_nu s with u = (d2 s, -d1 s) and sigma = (nu_y, -nu_x).tau.
  double wall_circulation(const ScalarField& s, const ScalarField* omega, int component) const {
    Eigen::VectorXd x(g_->size());
    for (int k = 0; k < g_->size(); ++k) x[k] = s[k];
    const Eigen::VectorXd As = A_ * x;
    const BoundaryComponent& c = frame_->components[component];
    double gamma = 0.0;
    for (int m = c.begin; m < c.begin + c.count; ++m) {
      const BoundaryNode& bn = frame_->nodes[m];
      const double source = omega ? -(*omega)[bn.node] * g_->weight[bn.node] : 0.0;
      const double sigma = dot({bn.nu.y, -bn.nu.x}, bn.tau);
      gamma += sigma * (source - As[bn.node]);
    }
    return gamma;
  }

  GridPtr g_;
  FramePtr frame_;
  Eigen::SparseMatrix<double> A_;
  std::vector<bool> wall_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  ScalarField unit_;
  double gamma_unit_ = 0.0, target_ = 0.0;
  Vec2 mean_u_{0.0, 0.0};
};

ScalarField vorticity_rate(const ScalarField& omega, const VectorField& u) {
  VectorField F(u.grid);
  for (int k = 0; k < u.size(); ++k) F.set(k, omega[k] * u.at(k));
  const std::vector<double> flux = fv_face_flux(F);
  ScalarField r(u.grid);
  for (int k = 0; k < r.size(); ++k) r[k] = -flux[k] / u.grid->weight[k];
  return r;
}

}  // namespace

double circulation(const VectorField& u, const BoundaryFrame& frame, int component) {
  const BoundaryComponent& c = frame.components.at(component);
  double s = 0.0;
  for (int m = c.begin; m < c.begin + c.count; ++m) {
    const BoundaryNode& bn = frame.nodes[m];
    s += dot(u.at(bn.node), bn.tau) * bn.dS;
  }
  return s;
}

EulerResult solve_euler(const VectorField& u0, double T, double dt) {
  const GridPtr& g = u0.grid;
  if (!g) throw Error(ErrorCode::InvalidSpec, "initial field has no grid");
  double step = dt;
  const int steps = time_steps(T, step);
  const FramePtr frame = boundary_frame_or_null(g);
  if (frame) require_tangential(u0, *frame, 1e-6, "initial velocity");
  const StreamSolver stream(g, u0);
  const double h = g->min_spacing();

  EulerResult res;
  res.u.dt = step;
  auto record = [&](const StreamSolver::State& st, const ScalarField& omega) {
    res.u.snapshots.push_back(st.u);
    res.circulation.push_back(st.circulation);
    res.energy.push_back(sq(l2(st.u)));
    res.total_vorticity.push_back(integrate(omega));
  };
  auto check_cfl = [&](const VectorField& u) {
    const double cfl = step * max_speed(u) / h;
    if (cfl > kAdvectiveCfl)
      throw Error(ErrorCode::CFLViolation, "advective CFL " + std::to_string(cfl) + " exceeds " + std::to_string(kAdvectiveCfl));
  };

  ScalarField omega = curl2d(u0);
  StreamSolver::State st = stream(omega);
  record(st, omega);
  for (int n = 0; n < steps; ++n) {
    check_cfl(st.u);
    const ScalarField k1 = vorticity_rate(omega, st.u);
    ScalarField w1 = omega;
    axpy(step, k1, w1);
    const VectorField u1 = stream(w1).u;
    check_cfl(u1);
    const ScalarField k2 = vorticity_rate(w1, u1);
    axpy(0.5 * step, k1, omega);
    axpy(0.5 * step, k2, omega);
    st = stream(omega);
    if (!all_finite(st.u)) throw Error(ErrorCode::SolverDiverged, "Euler step produced non-finite values");
    record(st, omega);
  }
  return res;
}

void validate(const SweepConfig& cfg) {
  if (cfg.mu_list.empty()) throw Error(ErrorCode::InvalidSpec, "mu_list is empty");
  for (std::size_t k = 0; k < cfg.mu_list.size(); ++k) {
    if (!(cfg.mu_list[k] > 0.0)) throw Error(ErrorCode::InvalidSpec, "viscosities must be positive");
    if (k > 0 && !(cfg.mu_list[k] < cfg.mu_list[k - 1]))
      throw Error(ErrorCode::InvalidSpec, "mu_list must be strictly decreasing");
  }
  if (cfg.threads < 1) throw Error(ErrorCode::InvalidSpec, "threads must be positive");
  validate(cfg.picard);
}

DiagnosticsRecord SweepReport::table() const {
  DiagnosticsRecord r({"mu", "e_sup", "e_grad", "noise_floor", "converged"});
  for (const SweepRow& row : rows) r.add({row.mu, row.e_sup, row.e_grad, row.noise_floor, row.converged ? 1.0 : 0.0});
  return r;
}

std::string SweepReport::summary() const {
  std::ostringstream os;
  os.precision(6);
  if (has_slope)
    os << "slope=" << slope;
  else
    os << "slope=n/a";
  os << " noise_floor=" << noise_floor << " above_floor=" << (above_floor ? "yes" : "no")
     << " grad_ratio=" << grad_ratio << " partial=" << (partial ? "yes" : "no");
  return os.str();
}

SweepReport sweep_mu(const SweepConfig& cfg) {
  validate(cfg);
  const GridPtr& g = cfg.base.grid;
  const double h = g->min_spacing();
  const double dt = cfg.base.dt > 0.0 ? cfg.base.dt : std::min(h * h, cfg.base.T / 100.0);
  const EulerResult ref = solve_euler(cfg.base.u0, cfg.base.T, dt);

  SweepReport rep;
  rep.noise_floor = 10.0 * (h * h + ref.u.dt);
  rep.rows.resize(cfg.mu_list.size());

  auto run_one = [&](std::size_t k) {
    SweepRow& row = rep.rows[k];
    row.mu = cfg.mu_list[k];
    row.noise_floor = rep.noise_floor;
    try {
      StokesRun run = cfg.base;
      run.mu = row.mu;
      run.dt = ref.u.dt;
      const NSSolution sol = picard_solve(run, cfg.picard);
      if (sol.u.size() != ref.u.size()) throw Error(ErrorCode::InvalidSpec, "Euler and Navier-Stokes time grids differ");
      double prev = 0.0;
      for (std::size_t n = 0; n < sol.u.size(); ++n) {
        const VectorField d = sol.u[n] - ref.u[n];
        row.e_sup = std::max(row.e_sup, l2(d));
        const double gd = grad_sq(d);
        if (n > 0) row.e_grad += 0.5 * ref.u.dt * (prev + gd);
        prev = gd;
      }
      row.converged = true;
    } catch (const Error& e) {
      row.error = e.what();
      log(LogLevel::Warn, "sweep: mu = " + std::to_string(row.mu) + " failed: " + row.error);
    }
  };

  const std::size_t m = cfg.mu_list.size();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), m);
  if (workers <= 1) {
    for (std::size_t k = 0; k < m; ++k) run_one(k);
  } else {
    std::mutex mtx;
    std::size_t next = 0;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t k;
          {
            std::lock_guard<std::mutex> lock(mtx);
            if (next >= m) return;
            k = next++;
          }
          run_one(k);
        }
      });
    for (auto& t : pool) t.join();
  }

  std::vector<double> lx, ly;
  double gmin = INFINITY, gmax = 0.0;
  rep.above_floor = true;
  for (const SweepRow& row : rep.rows) {
    if (!row.converged) {
      rep.partial = true;
      continue;
    }
    lx.push_back(std::log(row.mu));
    ly.push_back(std::log(std::max(row.e_sup, 1e-300)));
    gmin = std::min(gmin, row.e_grad);
    gmax = std::max(gmax, row.e_grad);
    if (!(row.e_sup > rep.noise_floor)) rep.above_floor = false;
  }
  if (lx.empty()) rep.above_floor = false;
  rep.grad_ratio = lx.empty() ? 0.0 : (gmin > 0.0 ? gmax / gmin : INFINITY);
  if (lx.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      mx += lx[k];
      my += ly[k];
    }
    mx /= lx.size();
    my /= lx.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      sxy += (lx[k] - mx) * (ly[k] - my);
      sxx += sq(lx[k] - mx);
    }
    rep.has_slope = true;
    rep.slope = sxy / sxx;
  }
  return rep;
}

ViscousGronwallReport gronwall_viscous_terms(const VectorHistory& u_mu, const VectorHistory& u, const BoundaryData& a,
                                             double mu, double mu0, const BoundaryFrame* frame) {
  if (u_mu.size() != u.size() || u.size() < 3)
    throw Error(ErrorCode::InvalidSpec, "histories must match and hold at least three snapshots");
  const GridPtr& g = u[0].grid;
  FieldHistory<ScalarField> e;  // |v|^2 as a constant field, reusing the history derivative
  e.dt = u.dt;
  ViscousGronwallReport r;
  std::vector<double> v2, gv2;
  for (std::size_t n = 0; n < u.size(); ++n) {
    const VectorField v = u_mu[n] - u[n];
    v2.push_back(sq(l2(v)));
    gv2.push_back(grad_sq(v));
    e.snapshots.emplace_back(g, v2.back());
  }
  for (std::size_t n = 0; n < u.size(); ++n) {
    const double dv2 = e.derivative(n)[0];
    // |grad u|_inf as the largest Frobenius norm over nodes.
    ScalarField ux(g), uy(g);
    ux.v = u[n].x;
    uy.v = u[n].y;
    const VectorField gux = grad(ux), guy = grad(uy);
    double ginf = 0.0;
    for (int k = 0; k < g->size(); ++k)
      ginf = std::max(ginf, std::sqrt(sq(gux.x[k]) + sq(gux.y[k]) + sq(guy.x[k]) + sq(guy.y[k])));
    double a2 = 0.0;
    if (frame && a) {
      BoundaryScalars s = a(u.time(n));
      for (double& x : s) x *= x;
      a2 = surface_integrate(*frame, s);
    }
    r.t.push_back(u.time(n));
    r.lhs.push_back(dv2 + mu * gv2[n]);
    r.A.push_back((ginf + mu0) * v2[n]);
    r.B.push_back(mu * (a2 + sq(h2(u[n]))));
  }
  return r;
}

ViscousGronwallCheck check_gronwall_viscous(const ViscousGronwallReport& r, double C, bool drop_mu_term) {
  ViscousGronwallCheck c;
  for (std::size_t n = 0; n < r.t.size(); ++n) {
    const double rhs = C * (r.A[n] + (drop_mu_term ? 0.0 : r.B[n]));
    const double ratio = rhs > 0.0 ? r.lhs[n] / rhs : (r.lhs[n] > 0.0 ? INFINITY : 0.0);
    c.worst_ratio = std::max(c.worst_ratio, ratio);
    if (r.lhs[n] > rhs) {
      if (c.holds) c.first_failure = static_cast<int>(n);
      c.holds = false;
    }
  }
  return c;
}

double calibrate_gronwall_viscous(const ViscousGronwallReport& r) {
  double C = 0.0;
  for (std::size_t n = 0; n < r.t.size(); ++n) {
    const double d = r.A[n] + r.B[n];
    if (d > 0.0) C = std::max(C, r.lhs[n] / d);
  }
  return C;
}

}  // namespace vortibc
