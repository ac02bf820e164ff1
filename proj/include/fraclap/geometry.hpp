#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fraclap {

using Vec = std::vector<double>;

double norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

struct Interval {
  double a;
  double b;
  double length() const { return b - a; }
  bool operator==(const Interval&) const = default;
};

// Bounded domain: a finite union of open intervals in d = 1, or an open ball in any d.
class Domain {
 public:
  enum class Kind { interval_union, ball };

  static Domain intervals(std::vector<Interval> pieces);
  static Domain interval(double a, double b) { return intervals({{a, b}}); }
  static Domain ball(Vec center, double radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<Interval>& pieces() const { return pieces_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

  // Open-set membership.
  bool contains(std::span<const double> x) const;
  // Closed-set membership (boundary included).
  bool contains_closed(std::span<const double> x, double slack = 0.0) const;
  double boundary_distance(std::span<const double> x) const;

  // Axis-aligned bounding box.
  Vec lower() const;
  Vec upper() const;

  // Intersection of two interval unions (d = 1 only).
  Domain intersect(const Domain& other) const;

  bool operator==(const Domain&) const = default;

 private:
  Kind kind_ = Kind::interval_union;
  int dim_ = 1;
  std::vector<Interval> pieces_;
  Vec center_;
  double radius_ = 0.0;
};

enum class OffsetClass { inner, band, outer };

// inner  : x in Omega and dist(x, dOmega) > lambda   (Omega_lambda)
// outer  : x not in Omega and dist(x, dOmega) >= lambda
// band   : everything else (Omega^lambda minus Omega_lambda)
OffsetClass offset_membership(const Domain& dom, std::span<const double> x, double lambda);

// Convex cone {h : |h| <= radius, h.axis >= |h| cos(half_opening)}.
class Cone {
 public:
  Cone(Vec axis, double half_opening, double radius);

  const Vec& axis() const { return axis_; }
  double half_opening() const { return half_opening_; }
  double radius() const { return radius_; }
  int dim() const { return static_cast<int>(axis_.size()); }

  // Length inflation bound of decompose_direction.
  double generating_constant() const { return generating_constant_; }
  // Largest |h| for which decompose_direction is guaranteed.
  double generating_radius() const;

  bool contains(std::span<const double> h) const;
  Cone scaled(double lambda) const { return Cone(axis_, half_opening_, radius_ * lambda); }

 private:
  Vec axis_;
  double half_opening_;
  double radius_;
  double generating_constant_;
};

bool cone_contains(const Cone& cone, std::span<const double> h);

// h = sum_j h_j with h_j in C or -C and sum |h_j| <= c |h|.
std::vector<Vec> decompose_direction(const Cone& cone, std::span<const double> h);

// h = plus - minus with plus, minus in C/2; requires |h| <= rho0 / 2.
struct TwoTermSplit {
  Vec plus;
  Vec minus;
};
TwoTermSplit split_two_term(const Cone& cone, std::span<const double> h);

// Cone of admissible outward directions at x0 for a concrete domain.
Cone admissible_cone(const Domain& dom, std::span<const double> x0);
// Radius used by admissible_cone for this domain.
double admissible_radius(const Domain& dom);

// Sampled check of (D_{3 rho}(x0) \ Omega) + t h in Omega^c for t in [0, 1].
bool is_admissible_outward(const Domain& dom, std::span<const double> x0, double rho,
                           std::span<const double> h, std::size_t samples = 400);

class Covering {
 public:
  Covering(std::vector<Vec> centers, double radius);

  // Balls of radius rho whose union contains Omega^delta.
  static Covering build(const Domain& dom, double rho, double delta);

  const std::vector<Vec>& centers() const { return centers_; }
  double radius() const { return radius_; }
  std::size_t size() const { return centers_.size(); }
  Domain ball_domain(std::size_t j) const;

  // Exact for interval unions, sampled for balls.
  bool covers(const Domain& dom, double delta) const;

 private:
  std::vector<Vec> centers_;
  double radius_;
};

}  // namespace fraclap
