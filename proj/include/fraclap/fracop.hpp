#pragma once

#include <vector>

#include "fraclap/descriptor.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

// C(d,s) = 2^{2s} s Gamma(s + d/2) / (pi^{d/2} Gamma(1-s)). Requires s in [0.05, 0.95].
double normalization_constant(int d, double s);

struct FracParams {
  double s;
  int d;
  double c_ds;
  FracParams(double s, int d);
  // Recomputes C(d,s) and checks the cached value.
  double constant() const;
};

// kappa(d,s) (r^2 - |x|^2)_+^s; (-Delta)^s of it equals 1 on the ball of radius r.
Descriptor getoor_solution(int d, double s, double r);

struct PointValue {
  double value;
  double error;
};

// C(d,s) p.v. int (f(x) - f(y)) |x-y|^{-d-2s} dy for a closed-form f. tol in [1e-10, 1e-3].
PointValue apply_pointwise(const Descriptor& fn, std::span<const double> x, const FracParams& params,
                           double tol = 1e-8);

struct GagliardoMode {
  enum class Kind { domain, full, semi_local };
  Kind kind = Kind::full;
  Vec center;         // semi_local ball center
  double radius = 0;  // semi_local ball radius

  static GagliardoMode domain() { return {Kind::domain, {}, 0.0}; }
  static GagliardoMode full() { return {Kind::full, {}, 0.0}; }
  static GagliardoMode semi_local(Vec c, double r) { return {Kind::semi_local, std::move(c), r}; }
};

// Fractional seminorm of the piecewise linear interpolant (d = 1).
//   domain : (C(1,sigma)/2 int_Omega int_Omega ...)^{1/2}
//   full   : (C(1,sigma)/2 int_R int_R ...)^{1/2}, v must vanish off Omega
//   semi   : (int_{D_r} int_R ...)^{1/2}, no normalization
double gagliardo_seminorm(const GridFunction& v, double sigma, const GagliardoMode& mode);

// Same full-space quantity evaluated by cell pairs plus exterior tails instead of the
// closed-form Toeplitz profile.
double gagliardo_full_cellpair(const GridFunction& v, double sigma);

// Seminorm of order 1 + tau, tau in (0, 1/2): (C(1,tau)/2 int_Omega int_Omega
// (v'(x)-v'(y))^2 |x-y|^{-1-2tau})^{1/2} with v' the piecewise constant derivative.
double derivative_seminorm(const GridFunction& v, double tau);

struct FunctionalValue {
  double F;
  double F2;
  double F1;
};

// F2 = |v|_{H^s(R)}^2 / 2, F1 = sum over nodes of closed Omega of f v Delta^d.
FunctionalValue dirichlet_functional(const GridFunction& v, const GridFunction& f, const FracParams& params);

enum class Functional { F, F1, F2 };

// max over steps of |F(T_h v) - F(v)| / |h|^gamma.
double regularity_modulus(Functional which, const GridFunction& v, const GridFunction& f, const FracParams& params,
                          const Cone& cone, const Cutoff& cut, double gamma, const std::vector<Vec>& steps);

// Per-step ratios |F(T_h v) - F(v)| / |h|^gamma in the order of steps.
std::vector<double> regularity_ratios(Functional which, const GridFunction& v, const GridFunction& f,
                                      const FracParams& params, const Cone& cone, const Cutoff& cut, double gamma,
                                      const std::vector<Vec>& steps);

}  // namespace fraclap
