#include "vortibc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "vortibc/elliptic.hpp"
#include "vortibc/euler.hpp"
#include "vortibc/io.hpp"
#include "vortibc/verification.hpp"

namespace vortibc {

namespace {

constexpr double kRequiredOrder = 1.8;
constexpr double kSolonnikovBound = 1.05;
constexpr int kSolonnikovSamples = 20;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string path_in(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.directory) / name).string();
}

void ensure_directory(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.directory, ec);
  if (ec) throw Error(ErrorCode::IOError, "cannot create '" + cfg.directory + "'");
}

template <class F>
void write_checkpoints(const RunConfig& cfg, const std::string& prefix, const FieldHistory<F>& h) {
  if (h.size() == 0) return;
  if (cfg.checkpoint_stride > 0)
    for (std::size_t n = 0; n < h.size(); n += cfg.checkpoint_stride) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%06zu.vbf", prefix.c_str(), n);
      write_vbf(path_in(cfg, name), to_vbf(h[n]));
    }
  write_vbf(path_in(cfg, prefix + "_final.vbf"), to_vbf(h[h.size() - 1]));
}

double max_wall_mismatch(const VectorField& u, const BoundaryData& a, const BoundaryFrame* frame, double t,
                         double* normal) {
  *normal = 0.0;
  if (!frame) return 0.0;
  *normal = max_abs(normal_component(u, *frame));
  const BoundaryScalars om = trace(curl2d(u), *frame);
  const BoundaryScalars an = a ? a(t) : BoundaryScalars(om.size(), 0.0);
  double m = 0.0;
  for (std::size_t k = 0; k < om.size(); ++k) m = std::max(m, std::abs(om[k] - an[k]));
  return m;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidSpec:
    case ErrorCode::ResolutionTooLow:
      return kExitConfig;
    case ErrorCode::NoContraction: return kExitNoContraction;
    case ErrorCode::PartialSweep: return kExitPartialSweep;
    default: return kExitSolver;
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  make_grid(cfg);  // resolution check before any work
  std::vector<int> res;
  for (int k = 0; k < cfg.verify_levels; ++k) res.push_back(cfg.n1 << k);
  const IdentitySuiteReport rep = run_identity_suite(cfg.domain, res);
  if (rep.boundary_skipped) out << "notice: no boundary on this domain; boundary identities skipped\n";

  std::string csv = "check,n,residual,order\n";
  std::string failed_name;
  for (std::size_t c = 0; c < rep.checks.size(); ++c) {
    const double order = rep.min_order(c);
    out << rep.checks[c] << ":";
    for (std::size_t k = 0; k < res.size(); ++k) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %d^2 %.3e", res[k], rep.residual[c][k]);
      out << buf;
      const double ok = k == 0 ? NAN
                               : std::log(rep.residual[c][k - 1] / rep.residual[c][k]) / std::log(double(res[k]) / res[k - 1]);
      csv += rep.checks[c] + "," + std::to_string(res[k]) + "," + fmt(rep.residual[c][k]) + "," + fmt(ok) + "\n";
    }
    char buf[48];
    if (std::isinf(order))
      std::snprintf(buf, sizeof buf, "  exact\n");
    else
      std::snprintf(buf, sizeof buf, "  order %.2f\n", order);
    out << buf;
    if (failed_name.empty() && !(order >= kRequiredOrder)) failed_name = rep.checks[c];
  }

  const GridPtr g = make_grid(cfg);
  if (boundary_frame_or_null(g)) {
    double worst = 0.0;
    for (int s = 0; s < kSolonnikovSamples; ++s)
      worst = std::max(worst, check_solonnikov(random_smooth_field(g, cfg.seed + s)));
    char buf[96];
    std::snprintf(buf, sizeof buf, "solonnikov: max ratio %.4f over %d fields (bound %.2f)\n", worst, kSolonnikovSamples,
                  kSolonnikovBound);
    out << buf;
    csv += "solonnikov," + std::to_string(cfg.n1) + "," + fmt(worst) + ",nan\n";
    if (failed_name.empty() && !(worst <= kSolonnikovBound)) failed_name = "solonnikov";
  }

  ensure_directory(cfg);
  write_file_atomic(path_in(cfg, "verify.csv"), csv);
  if (!failed_name.empty()) {
    out << "FAIL: " << failed_name << "\n";
    return kExitCheckFailed;
  }
  out << "all checks passed\n";
  return kExitOk;
}

int cmd_stokes(const RunConfig& cfg, std::ostream& out) {
  const StokesRun run = make_stokes_run(cfg);
  const StokesResult res = solve_stokes(run);
  const FramePtr frame = boundary_frame_or_null(run.grid);
  ensure_directory(cfg);
  write_csv(path_in(cfg, "stokes_diagnostics.csv"), res.diag);
  write_csv(path_in(cfg, "stokes_energy.csv"), stokes_energy_report(res.w, run.a, run.mu, frame.get()));
  write_checkpoints(cfg, "w", res.w);
  const VectorField& w = res.w[res.w.size() - 1];
  out << "stokes: " << res.steps << " steps of " << res.dt << "\n";
  out << "final l2=" << fmt(l2(w)) << " h1=" << fmt(h1(w)) << " h2=" << fmt(h2(w)) << "\n";
  return kExitOk;
}

int cmd_ns(const RunConfig& cfg, std::ostream& out) {
  const StokesRun run = make_stokes_run(cfg);
  const NSSolution sol = picard_solve(run, make_picard(cfg));
  const FramePtr frame = boundary_frame_or_null(run.grid);
  DiagnosticsRecord diag({"t", "l2", "h1", "div_v", "max_normal", "max_vort_err"});
  for (std::size_t n = 0; n < sol.u.size(); ++n) {
    double normal = 0.0;
    const double vort = max_wall_mismatch(sol.u[n], run.a, frame.get(), sol.u.time(n), &normal);
    diag.add({sol.u.time(n), l2(sol.u[n]), h1(sol.u[n]), l2(div(sol.v[n])), normal, vort});
  }
  ensure_directory(cfg);
  write_csv(path_in(cfg, "ns_trace.csv"), sol.trace());
  write_csv(path_in(cfg, "ns_diagnostics.csv"), diag);
  write_checkpoints(cfg, "u", sol.u);
  const VectorField& u = sol.u[sol.u.size() - 1];
  out << "ns: " << sol.iterations << " Picard iterations, last delta " << fmt(sol.delta.back()) << "\n";
  out << "final l2=" << fmt(l2(u)) << " h1=" << fmt(h1(u)) << "\n";
  if (cfg.initial == "taylor_green" && cfg.domain.kind == DomainKind::Torus) {
    const double rate = taylor_green_rate(*run.grid, run.mu);
    double err = 0.0;
    for (std::size_t n = 0; n < sol.u.size(); ++n) {
      const VectorField e = std::exp(-rate * sol.u.time(n)) * run.u0;
      err = std::max(err, l2(sol.u[n] - e) / l2(e));
    }
    out << "taylor_green relative l2 error=" << fmt(err) << "\n";
  }
  return kExitOk;
}

int cmd_euler(const RunConfig& cfg, std::ostream& out) {
  const GridPtr g = make_grid(cfg);
  const VectorField u0 = make_initial(cfg, g);
  double dt = cfg.dt;
  if (dt == 0.0) {
    const double speed = max_speed(u0);
    dt = cfg.T / 100.0;
    if (speed > 0.0) dt = std::min(dt, 0.5 * g->min_spacing() / speed);
  }
  const EulerResult r = solve_euler(u0, cfg.T, dt);
  std::vector<std::string> cols = {"t", "energy", "total_vorticity"};
  const std::size_t walls = r.circulation.empty() ? 0 : r.circulation[0].size();
  for (std::size_t c = 0; c < walls; ++c) cols.push_back("circulation_" + std::to_string(c));
  DiagnosticsRecord diag(cols);
  for (std::size_t n = 0; n < r.u.size(); ++n) {
    std::vector<double> row = {r.u.time(n), r.energy[n], r.total_vorticity[n]};
    for (double c : r.circulation[n]) row.push_back(c);
    diag.add(row);
  }
  ensure_directory(cfg);
  write_csv(path_in(cfg, "euler_diagnostics.csv"), diag);
  write_checkpoints(cfg, "u", r.u);
  out << "euler: " << r.u.size() - 1 << " steps of " << fmt(r.u.dt) << "\n";
  out << "final energy=" << fmt(r.energy.back()) << " initial energy=" << fmt(r.energy.front()) << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, int threads, std::ostream& out) {
  if (cfg.mu_list.empty()) throw Error(ErrorCode::ConfigError, "sweep needs physics.mu_list");
  SweepConfig sc;
  sc.base = make_stokes_run(cfg);
  sc.mu_list = cfg.mu_list;
  sc.picard = make_picard(cfg);
  sc.threads = std::max(1, std::min<int>(threads, static_cast<int>(cfg.mu_list.size())));
  const SweepReport rep = sweep_mu(sc);
  ensure_directory(cfg);
  write_csv(path_in(cfg, "sweep.csv"), rep.table());
  write_file_atomic(path_in(cfg, "sweep_summary.txt"), rep.summary() + "\n");
  for (const SweepRow& row : rep.rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "mu=%-10.4g e_sup=%-12.5e e_grad=%-12.5e %s", row.mu, row.e_sup, row.e_grad,
                  row.converged ? "converged" : "FAILED");
    out << buf;
    if (!row.converged) out << " (" << row.error << ")";
    out << "\n";
  }
  out << rep.summary() << "\n";
  return rep.partial ? kExitPartialSweep : kExitOk;
}

int run_command(const std::string& name, const RunConfig& cfg, int threads, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (name == "verify") return cmd_verify(cfg, out);
    if (name == "stokes") return cmd_stokes(cfg, out);
    if (name == "ns") return cmd_ns(cfg, out);
    if (name == "euler") return cmd_euler(cfg, out);
    if (name == "sweep") return cmd_sweep(cfg, threads, out);
    err << "unknown command '" << name << "'\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace vortibc
