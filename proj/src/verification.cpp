#include "vortibc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vortibc/scenarios.hpp"

namespace vortibc {

namespace {

ScalarField component(const VectorField& u, int c) {
  ScalarField f(u.grid);
  f.v = c == 0 ? u.x : u.y;
  return f;
}

ScalarField speed_sq(const VectorField& u) {
  ScalarField f(u.grid);
  for (int k = 0; k < u.size(); ++k) f[k] = u.x[k] * u.x[k] + u.y[k] * u.y[k];
  return f;
}

BoundaryScalars product(const BoundaryScalars& a, const BoundaryScalars& b) {
  BoundaryScalars r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] * b[k];
  return r;
}

// grad(div u) from second derivatives, avoiding a derivative of a derivative
// across the switch from centered to one-sided stencils.
VectorField grad_div(const VectorField& u) {
  const Hessian a = hessian(component(u, 0));
  const Hessian b = hessian(component(u, 1));
  VectorField r(u.grid);
  for (int k = 0; k < u.size(); ++k) {
    r.x[k] = a.xx[k] + b.xy[k];
    r.y[k] = a.xy[k] + b.yy[k];
  }
  return r;
}

bool deep_interior(const Grid& g, int i, int j) {
  if (!g.periodic1 && (i < 2 || i > g.n1 - 3)) return false;
  if (!g.periodic2 && (j < 2 || j > g.n2 - 3)) return false;
  return true;
}

double interior_max(const Grid& g, const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      if (!deep_interior(g, i, j)) continue;
      const int k = g.index(i, j);
      m = std::max(m, std::hypot(a[k], b[k]));
    }
  return m;
}

}  // namespace

double check_lemma21(const VectorField& u, const VectorField& w, const BoundaryFrame& frame) {
  const VectorField wu = advect(w, u);
  const BoundaryScalars lhs = normal_component(wu, frame);
  const BoundaryScalars un = normal_component(u, frame), ut = tangential_part(u, frame);
  const BoundaryScalars wn = normal_component(w, frame), wt = tangential_part(w, frame);
  const BoundaryScalars d = trace(div(u), frame);
  const BoundaryScalars ds_un = surface_curl(un, frame);
  const BoundaryScalars ds_wn = surface_curl(wn, frame);
  const BoundaryScalars ds_wnut = surface_curl(product(wn, ut), frame);
  double res = 0.0;
  for (int k = 0; k < frame.size(); ++k) {
    const double h = frame.nodes[k].h;
    const double rhs = -h * ut[k] * wt[k] - h * wn[k] * un[k] + wn[k] * d[k] + wt[k] * ds_un[k] +
                       ut[k] * ds_wn[k] - ds_wnut[k];
    res = std::max(res, std::abs(lhs[k] - rhs));
  }
  return res;
}

Lemma22Residual check_lemma22(const VectorField& u, const BoundaryFrame& frame) {
  Lemma22Residual r;
  const BoundaryScalars dn_div = normal_component(grad_div(u), frame);
  const BoundaryScalars lap_n = normal_component(laplacian(u), frame);
  const BoundaryScalars omega = trace(curl2d(u), frame);
  const BoundaryScalars ds_omega = surface_curl(omega, frame);
  for (int k = 0; k < frame.size(); ++k)
    r.part_i = std::max(r.part_i, std::abs(dn_div[k] - lap_n[k] - ds_omega[k]));

  const BoundaryScalars half_dn = normal_derivative(speed_sq(u), frame);
  const BoundaryScalars un = normal_component(u, frame), ut = tangential_part(u, frame);
  const BoundaryScalars d = trace(div(u), frame);
  const BoundaryScalars ds_un = surface_curl(un, frame);
  const BoundaryScalars ds_unut = surface_curl(product(un, ut), frame);
  for (int k = 0; k < frame.size(); ++k) {
    const double h = frame.nodes[k].h;
    const double rhs = omega[k] * ut[k] + un[k] * d[k] - h * ut[k] * ut[k] - h * un[k] * un[k] +
                       2.0 * ut[k] * ds_un[k] - ds_unut[k];
    r.part_ii = std::max(r.part_ii, std::abs(0.5 * half_dn[k] - rhs));
  }
  return r;
}

double check_integration_by_parts(const VectorField& u, const ScalarField& w, const BoundaryFrame* frame) {
  const ScalarField cu = curl2d(u);
  ScalarField cw(w.grid);
  for (int k = 0; k < w.size(); ++k) cw[k] = cu[k] * w[k];
  const double lhs = integrate(cw);
  const double vol = dot_l2(u, curl_scalar(w));
  double bdy = 0.0;
  if (frame) bdy = surface_integrate_all(*frame, product(trace(w, *frame), tangential_part(u, *frame)));
  return std::abs(lhs - vol - bdy);
}

BochnerResidual check_bochner_suite(const VectorField& u, const BoundaryFrame* frame) {
  BochnerResidual r;
  const VectorField lap = laplacian(u);
  const ScalarField omega = curl2d(u), d = div(u);
  const double om2 = l2(omega) * l2(omega), d2 = l2(d) * l2(d);
  const double gu2 = grad_sq(u);

  double b_pair = 0.0, b_energy = 0.0;
  if (frame) {
    const BoundaryScalars un = normal_component(u, *frame), ut = tangential_part(u, *frame);
    const BoundaryScalars om = trace(omega, *frame), dd = trace(d, *frame);
    const BoundaryScalars ds_un = surface_curl(un, *frame);
    BoundaryScalars p(frame->size()), e(frame->size());
    for (int k = 0; k < frame->size(); ++k) {
      const double h = frame->nodes[k].h;
      p[k] = om[k] * ut[k] + dd[k] * un[k];
      e[k] = -h * ut[k] * ut[k] - h * un[k] * un[k] + 2.0 * ut[k] * ds_un[k];
    }
    b_pair = surface_integrate_all(*frame, p);
    b_energy = surface_integrate_all(*frame, e);
  }
  r.laplace_pairing = std::abs(dot_l2(lap, u) - (-om2 - d2 + b_pair));
  r.gradient_energy = std::abs(gu2 - (om2 + d2 + b_energy));

  const ScalarField lap_s = laplacian(speed_sq(u));
  const VectorField ga = grad(component(u, 0)), gb = grad(component(u, 1));
  for (int k = 0; k < u.size(); ++k) {
    const double g2 = ga.x[k] * ga.x[k] + ga.y[k] * ga.y[k] + gb.x[k] * gb.x[k] + gb.y[k] * gb.y[k];
    const double lhs = lap.x[k] * u.x[k] + lap.y[k] * u.y[k];
    r.pointwise = std::max(r.pointwise, std::abs(lhs - (0.5 * lap_s[k] - g2)));
  }
  return r;
}

VectorIdentityResidual check_vector_identities(const VectorField& u) { return check_vector_identities(u, u); }

VectorIdentityResidual check_vector_identities(const VectorField& X, const VectorField& Y) {
  const Grid& g = *X.grid;
  VectorIdentityResidual r;

  // u.grad u = omega x u + 1/2 grad|u|^2 with omega x u = omega (-u_y, u_x).
  {
    const VectorField conv = advect(X, X);
    const ScalarField omega = curl2d(X);
    const VectorField gk = grad(speed_sq(X));
    std::vector<double> rx(g.size()), ry(g.size());
    for (int k = 0; k < g.size(); ++k) {
      rx[k] = conv.x[k] - (-omega[k] * X.y[k] + 0.5 * gk.x[k]);
      ry[k] = conv.y[k] - (omega[k] * X.x[k] + 0.5 * gk.y[k]);
    }
    r.convective = interior_max(g, rx, ry);
  }

  {
    const ScalarField lhs = curl2d(advect(X, Y));
    const VectorField gx0 = grad(component(X, 0)), gx1 = grad(component(X, 1));
    const VectorField gy0 = grad(component(Y, 0)), gy1 = grad(component(Y, 1));
    const VectorField gcy = grad(curl2d(Y));
    std::vector<double> rx(g.size()), zero(g.size(), 0.0);
    for (int k = 0; k < g.size(); ++k) {
      // sum_a (d_x X^a)(d_a Y^y) - (d_y X^a)(d_a Y^x)
      const double eps = gx0.x[k] * gy1.x[k] + gx1.x[k] * gy1.y[k] - gx0.y[k] * gy0.x[k] -
                         gx1.y[k] * gy0.y[k];
      rx[k] = lhs[k] - (eps + X.x[k] * gcy.x[k] + X.y[k] * gcy.y[k]);
    }
    r.curl_advection = interior_max(g, rx, zero);
  }

  {
    const VectorField lap = laplacian(X);
    const VectorField cc = curl_scalar(curl2d(X));
    const VectorField gd = grad(div(X));
    std::vector<double> rx(g.size()), ry(g.size());
    for (int k = 0; k < g.size(); ++k) {
      rx[k] = lap.x[k] - (-cc.x[k] + gd.x[k]);
      ry[k] = lap.y[k] - (-cc.y[k] + gd.y[k]);
    }
    r.laplacian = interior_max(g, rx, ry);
  }
  return r;
}

AbsoluteBCReport check_absolute_bc_inequalities(const std::vector<VectorField>& ensemble,
                                                const BoundaryFrame& frame, double bc_tol) {
  AbsoluteBCReport rep;
  for (const VectorField& u : ensemble) {
    const double size = max_abs(u);
    if (size == 0.0) throw Error(ErrorCode::DegenerateInput, "zero field in ensemble");
    const ScalarField omega = curl2d(u), d = div(u);
    if (max_abs(normal_component(u, frame)) > 1e-10 * size)
      throw Error(ErrorCode::BCViolation, "ensemble field has nonzero normal component");
    if (max_abs(trace(omega, frame)) > bc_tol * max_abs(omega.v))
      throw Error(ErrorCode::BCViolation, "ensemble field has nonzero boundary vorticity");

    const double u2 = l2(u) * l2(u), om2 = l2(omega) * l2(omega), d2 = l2(d) * l2(d);
    const double gu2 = grad_sq(u), hu2 = hess_sq(u);
    const double lap2 = l2(laplacian(u)) * l2(laplacian(u));
    const double gd2 = l2(grad(d)) * l2(grad(d));
    const double co2 = l2(curl_scalar(omega)) * l2(curl_scalar(omega));

    rep.h1_ratio = std::max(rep.h1_ratio, std::sqrt((u2 + gu2) / (om2 + d2 + u2)));
    rep.hessian_ratio = std::max(rep.hessian_ratio, hu2 / (lap2 + gu2));
    rep.h2_ratio = std::max(rep.h2_ratio, std::sqrt((u2 + gu2 + hu2) / (gd2 + co2 + u2)));
    ++rep.samples;
  }
  return rep;
}

double trace_constant(const VectorField& u, const BoundaryFrame& frame, double eps) {
  const BoundaryVectors t = trace(u, frame);
  BoundaryScalars s(t.size());
  for (size_t k = 0; k < t.size(); ++k) s[k] = dot(t[k], t[k]);
  const double bdy = surface_integrate_all(frame, s);
  const double u2 = l2(u) * l2(u);
  if (u2 == 0.0) throw Error(ErrorCode::DegenerateInput, "zero field");
  return std::max(0.0, eps * (bdy - eps * grad_sq(u)) / u2);
}

double psi_normal_trace(const VectorField& u, const BoundaryFrame& frame) {
  return max_abs(normal_component(curl_scalar(curl2d(u)), frame));
}

namespace {

Vec2 field_u(double x, double y) {
  return {std::sin(0.6 * x + 0.3 * y) + 0.2 * x * y, std::cos(0.4 * x - 0.5 * y) + 0.1 * x * x};
}
Vec2 field_w(double x, double y) { return {std::cos(0.5 * y) * x, 0.2 * x * x * y - std::sin(0.7 * x)}; }
// Divergence-free, from the stream functions sin x cos y + x^2 y and e^{0.3x} sin y.
Vec2 field_a(double x, double y) {
  return {-std::sin(x) * std::sin(y) + x * x, -(std::cos(x) * std::cos(y) + 2 * x * y)};
}
Vec2 field_b(double x, double y) {
  return {std::exp(0.3 * x) * std::cos(y), -0.3 * std::exp(0.3 * x) * std::sin(y)};
}
double field_s(double x, double y) { return std::sin(0.5 * x + 0.8 * y) + 0.3 * x * y; }

// Periodic fields for the torus, in angles a = 2 pi x / Lx and b = 2 pi y / Ly.
struct PeriodicFields {
  double kx, ky;
  Vec2 u(double x, double y) const {
    const double a = kx * x, b = ky * y;
    return {std::sin(a + b) + 0.3 * std::cos(2.0 * a), std::cos(a - 2.0 * b) + 0.2 * std::sin(b)};
  }
  Vec2 w(double x, double y) const {
    const double a = kx * x, b = ky * y;
    return {std::cos(b) * std::sin(a), 0.5 * std::sin(2.0 * a + b)};
  }
  // Divergence-free from the stream function sin a cos b + 0.5 sin(a + 2 b).
  Vec2 div_free(double x, double y) const {
    const double a = kx * x, b = ky * y;
    return {ky * (-std::sin(a) * std::sin(b) + std::cos(a + 2.0 * b)),
            -kx * (std::cos(a) * std::cos(b) + 0.5 * std::cos(a + 2.0 * b))};
  }
  double s(double x, double y) const { return std::sin(kx * x + 2.0 * ky * y) + 0.3 * std::cos(ky * y); }
};

// Residuals at rounding level count as exact and carry no order.
constexpr double kExactResidual = 1e-10;

}  // namespace

double IdentitySuiteReport::min_order(std::size_t check) const {
  double worst = INFINITY;
  const std::vector<double>& r = residual.at(check);
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (r[k] <= kExactResidual) continue;
    const double o = std::log(r[k - 1] / r[k]) / std::log(static_cast<double>(resolutions[k]) / resolutions[k - 1]);
    worst = std::min(worst, o);
  }
  return worst;
}

int IdentitySuiteReport::first_failure(double min_order_required) const {
  for (std::size_t c = 0; c < checks.size(); ++c)
    if (!(min_order(c) >= min_order_required)) return static_cast<int>(c);
  return -1;
}

IdentitySuiteReport run_identity_suite(const DomainSpec& domain, const std::vector<int>& resolutions) {
  if (resolutions.size() < 2) throw Error(ErrorCode::InvalidSpec, "the identity suite needs at least two resolutions");
  IdentitySuiteReport rep;
  rep.resolutions = resolutions;
  for (int n : resolutions) {
    const GridPtr g = build_grid(domain, n, n);
    const FramePtr f = boundary_frame_or_null(g);
    VectorField u, w, a, b;
    ScalarField sc;
    if (f) {
      u = sample(g, field_u);
      w = sample(g, field_w);
      a = sample(g, field_a);
      b = sample(g, field_b);
      sc = sample(g, field_s);
    } else {
      const PeriodicFields p{2.0 * M_PI / domain.length_x, 2.0 * M_PI / domain.length_y};
      u = sample(g, [&](double x, double y) { return p.u(x, y); });
      w = sample(g, [&](double x, double y) { return p.w(x, y); });
      a = sample(g, [&](double x, double y) { return p.div_free(x, y); });
      sc = sample(g, [&](double x, double y) { return p.s(x, y); });
    }
    std::vector<std::pair<std::string, double>> r;
    if (f) {
      r.emplace_back("lemma21_divfree", check_lemma21(a, b, *f));
      r.emplace_back("lemma21_general", check_lemma21(u, w, *f));
      const Lemma22Residual l22 = check_lemma22(u, *f);
      r.emplace_back("lemma22_i", l22.part_i);
      r.emplace_back("lemma22_ii", l22.part_ii);
    }
    r.emplace_back("integration_by_parts", check_integration_by_parts(u, sc, f.get()));
    const BochnerResidual bo = check_bochner_suite(u, f.get());
    r.emplace_back("bochner_pairing", bo.laplace_pairing);
    r.emplace_back("bochner_gradient", bo.gradient_energy);
    r.emplace_back("bochner_pointwise", bo.pointwise);
    const VectorIdentityResidual vi = check_vector_identities(u);
    r.emplace_back("convective", vi.convective);
    r.emplace_back("curl_advection", check_vector_identities(a, u).curl_advection);
    r.emplace_back("laplacian", vi.laplacian);
    if (rep.checks.empty()) {
      rep.boundary_skipped = !f;
      for (const auto& [name, value] : r) rep.checks.push_back(name);
      rep.residual.resize(r.size());
    }
    for (std::size_t c = 0; c < r.size(); ++c) rep.residual[c].push_back(r[c].second);
  }
  return rep;
}

}  // namespace vortibc
