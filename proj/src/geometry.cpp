#include "vortibc/geometry.hpp"

#include <algorithm>

namespace vortibc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::NoBoundary: return "NoBoundary";
    case ErrorCode::MissingTimeDerivative: return "MissingTimeDerivative";
    case ErrorCode::BCViolation: return "BCViolation";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::IncompatibleData: return "IncompatibleData";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::LinearSolveFailed: return "LinearSolveFailed";
    case ErrorCode::BCEnforcementFailed: return "BCEnforcementFailed";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::CirculationSystemSingular: return "CirculationSystemSingular";
    case ErrorCode::PartialSweep: return "PartialSweep";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Annulus: return "annulus";
    case DomainKind::Disk: return "disk";
    case DomainKind::Channel: return "channel";
    case DomainKind::Torus: return "torus";
  }
  return "unknown";
}

DomainKind domain_kind_from_string(const std::string& name) {
  if (name == "annulus") return DomainKind::Annulus;
  if (name == "disk") return DomainKind::Disk;
  if (name == "channel") return DomainKind::Channel;
  if (name == "torus") return DomainKind::Torus;
  throw Error(ErrorCode::InvalidSpec, "unknown domain kind '" + name + "'");
}

DomainSpec DomainSpec::annulus(double r_inner, double r_outer) {
  DomainSpec s;
  s.kind = DomainKind::Annulus;
  s.r_inner = r_inner;
  s.r_outer = r_outer;
  return s;
}

DomainSpec DomainSpec::disk(double r_outer) {
  DomainSpec s;
  s.kind = DomainKind::Disk;
  s.r_inner = 0.0;
  s.r_outer = r_outer;
  return s;
}

DomainSpec DomainSpec::channel(double length_x, double length_y) {
  DomainSpec s;
  s.kind = DomainKind::Channel;
  s.length_x = length_x;
  s.length_y = length_y;
  return s;
}

DomainSpec DomainSpec::torus(double length_x, double length_y) {
  DomainSpec s;
  s.kind = DomainKind::Torus;
  s.length_x = length_x;
  s.length_y = length_y;
  return s;
}

int Grid::bounded_axis() const {
  if (!periodic1) return 0;
  if (!periodic2) return 1;
  return -1;
}

bool Grid::on_boundary(int i, int j) const {
  if (!periodic1 && (i == 0 || i == n1 - 1)) return true;
  if (!periodic2 && (j == 0 || j == n2 - 1)) return true;
  return false;
}

Vec2 Grid::position(int i, int j) const {
  if (polar) return {xi1[i] * cos_[j], xi1[i] * sin_[j]};
  return {xi1[i], xi2[j]};
}

double Grid::min_spacing() const {
  if (polar) return std::min(h1, xi1.front() * h2);
  return std::min(h1, h2);
}

double Grid::area() const {
  double a = 0.0;
  for (double w : weight) a += w;
  return a;
}

double Grid::cell_lo1(int i) const {
  if (!periodic1 && i == 0) return xi1[0];
  return xi1[i] - 0.5 * h1;
}

double Grid::cell_hi1(int i) const {
  if (!periodic1 && i == n1 - 1) return xi1[n1 - 1];
  return xi1[i] + 0.5 * h1;
}

double Grid::cell_len2(int j) const {
  if (!periodic2 && (j == 0 || j == n2 - 1)) return 0.5 * h2;
  return h2;
}

GridPtr build_grid(const DomainSpec& spec, int n1, int n2) {
  switch (spec.kind) {
    case DomainKind::Annulus:
      if (!(spec.r_inner > 0.0 && spec.r_inner < spec.r_outer))
        throw Error(ErrorCode::InvalidSpec, "annulus needs 0 < r_inner < r_outer");
      break;
    case DomainKind::Disk:
      if (!(spec.r_outer > 0.0)) throw Error(ErrorCode::InvalidSpec, "disk needs r_outer > 0");
      break;
    case DomainKind::Channel:
    case DomainKind::Torus:
      if (!(spec.length_x > 0.0 && spec.length_y > 0.0))
        throw Error(ErrorCode::InvalidSpec, "lengths must be positive");
      break;
  }
  if (n1 < 8 || n2 < 8)
    throw Error(ErrorCode::ResolutionTooLow,
                "need n1, n2 >= 8, got " + std::to_string(n1) + "x" + std::to_string(n2));

  auto g = std::make_shared<Grid>();
  g->spec = spec;
  g->n1 = n1;
  g->n2 = n2;
  g->xi1.resize(n1);
  g->xi2.resize(n2);

  if (spec.kind == DomainKind::Annulus || spec.kind == DomainKind::Disk) {
    g->polar = true;
    g->periodic1 = false;
    g->periodic2 = true;
    double r0 = spec.r_inner;
    if (spec.kind == DomainKind::Disk) {
      // Pole cut at two radial cells: r_0 = 2 h1, r_{n1-1} = r_outer.
      g->h1 = spec.r_outer / (n1 + 1);
      r0 = 2.0 * g->h1;
    } else {
      g->h1 = (spec.r_outer - spec.r_inner) / (n1 - 1);
    }
    for (int i = 0; i < n1; ++i) g->xi1[i] = r0 + i * g->h1;
    g->xi1[n1 - 1] = spec.r_outer;
    g->h2 = 2.0 * M_PI / n2;
    for (int j = 0; j < n2; ++j) g->xi2[j] = j * g->h2;
  } else if (spec.kind == DomainKind::Channel) {
    g->periodic1 = true;
    g->periodic2 = false;
    g->h1 = spec.length_x / n1;
    g->h2 = spec.length_y / (n2 - 1);
    for (int i = 0; i < n1; ++i) g->xi1[i] = i * g->h1;
    for (int j = 0; j < n2; ++j) g->xi2[j] = j * g->h2;
    g->xi2[n2 - 1] = spec.length_y;
  } else {
    g->periodic1 = true;
    g->periodic2 = true;
    g->h1 = spec.length_x / n1;
    g->h2 = spec.length_y / n2;
    for (int i = 0; i < n1; ++i) g->xi1[i] = i * g->h1;
    for (int j = 0; j < n2; ++j) g->xi2[j] = j * g->h2;
  }

  g->cos_.resize(n2);
  g->sin_.resize(n2);
  for (int j = 0; j < n2; ++j) {
    g->cos_[j] = std::cos(g->xi2[j]);
    g->sin_[j] = std::sin(g->xi2[j]);
  }

  g->weight.resize(g->size());
  for (int i = 0; i < n1; ++i) {
    const double lo = g->cell_lo1(i), hi = g->cell_hi1(i);
    const double a1 = g->polar ? 0.5 * (hi * hi - lo * lo) : hi - lo;
    for (int j = 0; j < n2; ++j) g->weight[g->index(i, j)] = a1 * g->cell_len2(j);
  }
  return g;
}

FramePtr boundary_frame(const GridPtr& grid) {
  const Grid& g = *grid;
  if (g.spec.kind == DomainKind::Torus) throw Error(ErrorCode::NoBoundary, "torus has no boundary");

  auto f = std::make_shared<BoundaryFrame>();
  f->grid = grid;

  if (g.polar) {
    for (int side = 0; side < 2; ++side) {
      const int i = side == 0 ? 0 : g.n1 - 1;
      const double r = g.xi1[i];
      const double s = side == 0 ? -1.0 : 1.0;
      BoundaryComponent c;
      c.name = side == 0 ? "inner" : "outer";
      c.begin = f->size();
      c.count = g.n2;
      c.sense = side == 0 ? -1 : 1;
      c.ds = r * g.h2;
      c.perimeter = 2.0 * M_PI * r;
      c.artificial = side == 0 && g.spec.kind == DomainKind::Disk;
      for (int j = 0; j < g.n2; ++j) {
        BoundaryNode b;
        b.node = g.index(i, j);
        b.nu = s * g.e1(j);
        b.tau = s * g.e2(j);
        b.h = s / r;
        b.dS = c.ds;
        f->nodes.push_back(b);
      }
      f->components.push_back(c);
    }
  } else {
    for (int side = 0; side < 2; ++side) {
      const int j = side == 0 ? 0 : g.n2 - 1;
      const double s = side == 0 ? -1.0 : 1.0;
      BoundaryComponent c;
      c.name = side == 0 ? "bottom" : "top";
      c.begin = f->size();
      c.count = g.n1;
      c.sense = side == 0 ? 1 : -1;
      c.ds = g.h1;
      c.perimeter = g.spec.length_x;
      for (int i = 0; i < g.n1; ++i) {
        BoundaryNode b;
        b.node = g.index(i, j);
        b.nu = {0.0, s};
        b.tau = {-s, 0.0};
        b.h = 0.0;
        b.dS = c.ds;
        f->nodes.push_back(b);
      }
      f->components.push_back(c);
    }
  }
  return f;
}

FramePtr boundary_frame_or_null(const GridPtr& grid) {
  if (grid->spec.kind == DomainKind::Torus) return nullptr;
  return boundary_frame(grid);
}

BoundaryScalars second_fundamental_form(const BoundaryFrame& frame, const BoundaryVectors& u,
                                        const BoundaryVectors& w) {
  BoundaryScalars out(frame.size());
  for (int k = 0; k < frame.size(); ++k) {
    const BoundaryNode& b = frame.nodes[k];
    out[k] = b.h * dot(u[k], b.tau) * dot(w[k], b.tau);
  }
  return out;
}

double surface_integrate(const BoundaryFrame& frame, const BoundaryScalars& f) {
  double s = 0.0;
  for (const BoundaryComponent& c : frame.components) {
    if (c.artificial) continue;
    for (int k = c.begin; k < c.begin + c.count; ++k) s += f[k] * frame.nodes[k].dS;
  }
  return s;
}

double surface_integrate_all(const BoundaryFrame& frame, const BoundaryScalars& f) {
  double s = 0.0;
  for (int k = 0; k < frame.size(); ++k) s += f[k] * frame.nodes[k].dS;
  return s;
}

}  // namespace vortibc
