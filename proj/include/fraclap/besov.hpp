#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/geometry.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

inline constexpr double kInfQ = std::numeric_limits<double>::infinity();

struct BesovIndex {
  double sigma;
  double q = kInfQ;
  int p = 2;
  BesovIndex(double sigma, double q = kInfQ);
  bool q_infinite() const { return std::isinf(q); }
  // Interpolation parameter for the (L2, H1) pair.
  double theta_h1() const { return sigma; }
  // Interpolation parameter for the (L2, H2) pair.
  double theta_h2() const { return sigma / 2; }
};

struct DirectionSet {
  enum class Kind { ball, cone };
  Kind kind = Kind::ball;
  double radius = 0.0;
  std::optional<Cone> cone;

  static DirectionSet ball(double rho);
  static DirectionSet of_cone(const Cone& c);
};

// Aligned sample of the direction set: dyadic shells radius 2^{-k} down to 4 spacings;
// in d = 2, 16 lattice angles per shell. symmetric = true drops h when -h is present
// (ball only; second differences do not see the sign).
std::vector<Vec> sample_directions(const DirectionSet& dirs, const Grid& grid, bool symmetric = true,
                                   long min_cells = 4);

// Difference-quotient seminorm [v]_{B^sigma_{2,q}} by second differences.
double dq_seminorm(const GridFunction& v, const BesovIndex& idx, const DirectionSet& dirs,
                   const Restriction& where);

struct KProfile {
  std::vector<double> ts;
  std::vector<double> ks;
  std::string pair = "L2,H1";
  double l2 = 0.0;  // discrete ||u||_{L2}
  double h1 = 0.0;  // discrete ||u||_{H1}
};

// K(t,u) for the (L2, H1) pair on an interval union.
KProfile k_functional(const GridFunction& u, const std::vector<double>& ts, const std::string& pair = "L2,H1");
std::vector<double> log_spaced(double lo, double hi, std::size_t per_decade);

// Violations of the KProfile shape invariants (empty when all hold).
std::vector<std::string> kprofile_violations(const KProfile& kp, double slack = 1e-10);

struct InterpolationNorm {
  double value;
  double tail_bound;  // analytic tail contribution included in value (finite q)
};

InterpolationNorm interpolation_norm(const KProfile& kp, const BesovIndex& idx);
double interpolation_norm(const GridFunction& u, const BesovIndex& idx, const KProfile& kp);

struct RatioReport {
  std::string name;
  double lhs;
  double rhs;
  double ratio;
};

RatioReport marchaud_check(const GridFunction& v, double sigma, double rho,
                           const Restriction& where = Restriction{Restriction::Kind::inner, {}});

struct Localization {
  std::vector<double> per_ball;
  double aggregate;
  double global;
};

// Per-ball seminorms over D_j (zero-extension variant) against the whole-space seminorm.
Localization localize(const GridFunction& v, const Covering& cov, const BesovIndex& idx, const DirectionSet& dirs);

// lhs = max ||delta_2(h) v||_{L2(Omega_|h|)} / |h|^{s+sigma},
// rhs = max |v - v_h|_{H^s(Omega)} / |h|^sigma over the same steps.
std::pair<double, double> reiteration_bound(const GridFunction& v, double s, double sigma, const std::vector<Vec>& steps);

// max |2 d2(h1-h2)v - d2(2h1)v - d2(2h2)v + d2(h1+h2)(tau(h1-h2)v + tau(h2-h1)v)| over the grid.
double cone_identity_residual(const GridFunction& v, std::span<const double> h1, std::span<const double> h2);

}  // namespace fraclap
