#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "vortibc/error.hpp"

namespace vortibc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

enum class DomainKind { Annulus, Disk, Channel, Torus };

const char* to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

// Annulus: r_inner < r < r_outer.  Disk: r < r_outer, with the pole cut out.
// Channel: periodic in x over length_x, walls at y = 0 and y = length_y.
// Torus: doubly periodic [0, length_x) x [0, length_y).
struct DomainSpec {
  DomainKind kind = DomainKind::Annulus;
  double r_inner = 1.0;
  double r_outer = 2.0;
  double length_x = 2.0 * M_PI;
  double length_y = 2.0 * M_PI;

  static DomainSpec annulus(double r_inner, double r_outer);
  static DomainSpec disk(double r_outer);
  static DomainSpec channel(double length_x, double length_y);
  static DomainSpec torus(double length_x, double length_y);

  bool operator==(const DomainSpec&) const = default;
};

// Structured grid on orthogonal coordinates (xi1, xi2).  Polar domains use
// xi1 = r (bounded) and xi2 = theta (periodic); Channel and Torus use
// xi1 = x, xi2 = y.  Node k = i * n2 + j, so coordinate 2 runs fastest.
//
// The metric is ds^2 = dxi1^2 + R(xi1)^2 dxi2^2 with R = r on polar grids
// and R = 1 otherwise.  Vectors are stored in Cartesian components; e1, e2
// is the orthonormal coordinate frame at each node.
class Grid {
 public:
  DomainSpec spec;
  int n1 = 0;
  int n2 = 0;
  double h1 = 0.0;
  double h2 = 0.0;
  bool periodic1 = false;
  bool periodic2 = false;
  bool polar = false;
  std::vector<double> xi1;
  std::vector<double> xi2;
  std::vector<double> weight;  // control-volume area per node

  int size() const { return n1 * n2; }
  int index(int i, int j) const { return i * n2 + j; }
  // Axis carrying the walls: 0, 1, or -1 on the torus.
  int bounded_axis() const;
  bool on_boundary(int i, int j) const;

  double scale(int i) const { return polar ? xi1[i] : 1.0; }
  // dR/dxi1: 1 on polar grids, 0 otherwise.
  double scale_slope() const { return polar ? 1.0 : 0.0; }

  Vec2 position(int i, int j) const;
  Vec2 e1(int j) const { return polar ? Vec2{cos_[j], sin_[j]} : Vec2{1.0, 0.0}; }
  Vec2 e2(int j) const { return polar ? Vec2{-sin_[j], cos_[j]} : Vec2{0.0, 1.0}; }

  // Smallest physical node spacing, used for CFL limits.
  double min_spacing() const;
  double area() const;

  // Extent of the control volume of row i along xi1 (clipped at walls),
  // and of column j along xi2.
  double cell_lo1(int i) const;
  double cell_hi1(int i) const;
  double cell_len2(int j) const;

 private:
  friend std::shared_ptr<const Grid> build_grid(const DomainSpec&, int, int);
  std::vector<double> cos_, sin_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const DomainSpec& spec, int n1, int n2);

struct BoundaryNode {
  int node = 0;  // grid index
  Vec2 nu;       // outward unit normal
  Vec2 tau;      // unit tangent, domain on the left
  double h = 0.0;  // curvature <grad_tau nu, tau>; also H in 2D
  double dS = 0.0;
};

struct BoundaryComponent {
  std::string name;
  int begin = 0;
  int count = 0;
  // +1 when tau points toward increasing node order along the component.
  int sense = 1;
  double ds = 0.0;  // uniform arc-length spacing
  double perimeter = 0.0;
  // The inner circle of the Disk grid is a numerical cut, not part of the
  // physical boundary.
  bool artificial = false;
};

struct BoundaryFrame {
  GridPtr grid;
  std::vector<BoundaryNode> nodes;
  std::vector<BoundaryComponent> components;
  int size() const { return static_cast<int>(nodes.size()); }
};

using FramePtr = std::shared_ptr<const BoundaryFrame>;
using BoundaryScalars = std::vector<double>;
using BoundaryVectors = std::vector<Vec2>;

FramePtr boundary_frame(const GridPtr& grid);
// Null on the torus instead of throwing.
FramePtr boundary_frame_or_null(const GridPtr& grid);

BoundaryScalars second_fundamental_form(const BoundaryFrame& frame, const BoundaryVectors& u,
                                        const BoundaryVectors& w);

// Sum of f dS over the physical components (artificial cuts excluded).
double surface_integrate(const BoundaryFrame& frame, const BoundaryScalars& f);
// Same, but including artificial components.
double surface_integrate_all(const BoundaryFrame& frame, const BoundaryScalars& f);

}  // namespace vortibc
