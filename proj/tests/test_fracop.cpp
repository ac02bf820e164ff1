#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/fracop.hpp"

using namespace fraclap;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

double oracle_c(int d, double s) {
  const big S(s), D(d);
  const big pi = boost::math::constants::pi<big>();
  const big v = pow(big(2), 2 * S) * S * boost::math::tgamma(S + D / 2) /
                (pow(pi, D / 2) * boost::math::tgamma(1 - S));
  return static_cast<double>(v);
}

double oracle_kappa(int d, double s) {
  const big S(s), D(d);
  return static_cast<double>(pow(big(2), -2 * S) * boost::math::tgamma(D / 2) /
                             (boost::math::tgamma(D / 2 + S) * boost::math::tgamma(1 + S)));
}

GridFunction zero_ext(const Descriptor& fn, std::size_t n, double half = 1.5) {
  const Grid g = Grid::box({-half}, 2 * half, n);
  return sample(fn, g, Domain::interval(-1, 1), true);
}

}  // namespace

TEST_CASE("normalization constant against a 50-digit gamma") {
  CHECK(normalization_constant(1, 0.5) == doctest::Approx(1 / std::numbers::pi).epsilon(1e-14));
  CHECK(normalization_constant(2, 0.5) == doctest::Approx(0.5 / std::numbers::pi).epsilon(1e-14));
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 19; ++k) {
      const double s = 0.05 * k;
      CHECK(std::abs(normalization_constant(d, s) - oracle_c(d, s)) <= 1e-12 * oracle_c(d, s));
      CHECK(std::abs(getoor_kappa(d, s) - oracle_kappa(d, s)) <= 1e-12 * oracle_kappa(d, s));
    }
  CHECK_THROWS_AS(normalization_constant(1, 0.01), OutOfRange);
  CHECK_THROWS_AS(normalization_constant(1, 0.99), OutOfRange);
  const FracParams p(0.3, 2);
  CHECK(p.constant() == p.c_ds);
}

TEST_CASE("getoor closed forms") {
  const Vec o1 = {0.0}, o2 = {0.0, 0.0}, x = {0.6}, out = {1.2}, out2 = {0.8, 0.7};
  CHECK(getoor_kappa(1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(getoor_solution(1, 0.5, 1)(x) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(getoor_solution(2, 0.5, 1)(o2) == doctest::Approx(2 / std::numbers::pi).epsilon(1e-14));
  CHECK(getoor_solution(1, 0.3, 1)(out) == 0.0);
  CHECK(getoor_solution(2, 0.7, 1)(out2) == 0.0);
  CHECK(getoor_solution(1, 0.5, 2)(o1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("pointwise operator") {
  const Vec o = {0.0};
  CHECK(apply_pointwise(getoor_solution(1, 0.5, 1), o, FracParams(0.5, 1)).value == doctest::Approx(1.0).epsilon(1e-4));
  const Vec x2 = {0.3, 0.4};
  CHECK(apply_pointwise(getoor_solution(2, 0.25, 1), x2, FracParams(0.25, 2)).value ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(apply_pointwise(Descriptor::constant(3.0), o, FracParams(0.4, 1)).value) < 1e-12);
  // scaling: (-Delta)^s of getoor with radius r is still 1
  const Vec y = {0.7};
  CHECK(apply_pointwise(getoor_solution(1, 0.75, 2), y, FracParams(0.75, 1)).value ==
        doctest::Approx(1.0).epsilon(1e-4));
  // Getoor in d=2 evaluated off-center
  const Vec z = {-0.5, 0.6};
  CHECK(apply_pointwise(getoor_solution(2, 0.75, 1), z, FracParams(0.75, 2)).value ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(apply_pointwise(getoor_solution(1, 0.5, 1), o, FracParams(0.5, 1), 1e-12), InvalidArgument);
  CHECK_THROWS_AS(apply_pointwise(Descriptor::parse("power:1"), o, FracParams(0.5, 1)), InvalidArgument);
}

TEST_CASE("gagliardo seminorm") {
  const Grid g = Grid::box({-1.0}, 2.0, 256);
  const auto c = sample(Descriptor::constant(2.0), g, Domain::interval(-1, 1), false);
  CHECK(gagliardo_seminorm(c, 0.4, GagliardoMode::domain()) == doctest::Approx(0.0));

  // w(x) = v(2x): same nodal values on a grid of half the spacing
  const auto v = zero_ext(getoor_solution(1, 0.5, 1), 1024);
  GridFunction w = v;
  w.grid = Grid({-0.75}, v.grid.spacing / 2, v.grid.shape);
  w.domain = Domain::interval(-0.5, 0.5);
  for (double sg : {0.25, 0.5, 0.75}) {
    const double a = gagliardo_seminorm(v, sg, GagliardoMode::full());
    const double b = gagliardo_seminorm(w, sg, GagliardoMode::full());
    CHECK(b == doctest::Approx(std::pow(2.0, sg - 0.5) * a).epsilon(0.01));
  }

  const double n12 = gagliardo_seminorm(zero_ext(getoor_solution(1, 0.5, 1), 3 << 12), 0.5, GagliardoMode::full());
  const double n13 = gagliardo_seminorm(zero_ext(getoor_solution(1, 0.5, 1), 3 << 13), 0.5, GagliardoMode::full());
  CHECK(std::isfinite(n13));
  CHECK(std::abs(n12 / n13 - 1) < 0.02);

  // the closed-form Toeplitz evaluation agrees with cell pairs plus tails
  const auto b = zero_ext(Descriptor::parse("bump"), 600);
  for (double sg : {0.3, 0.7})
    CHECK(gagliardo_full_cellpair(b, sg) ==
          doctest::Approx(gagliardo_seminorm(b, sg, GagliardoMode::full())).epsilon(1e-6));

  // domain <= full for zero-extended data; semi-local over D_r misses only x outside D_r, where
  // v = 0 and the y-integral is int v(y)^2 ((r-y)^{-2 sigma} + (r+y)^{-2 sigma}) / (2 sigma)
  for (double sg : {0.3, 0.7}) {
    const double full = gagliardo_seminorm(b, sg, GagliardoMode::full());
    CHECK(gagliardo_seminorm(b, sg, GagliardoMode::domain()) <= full);
    const double r = 1.2;
    const double semi = gagliardo_seminorm(b, sg, GagliardoMode::semi_local({0.0}, r));
    double outside = 0.0;
    for (std::size_t i = 0; i < b.values.size(); ++i) {
      const double y = b.grid.point(i)[0];
      if (b.values[i] == 0.0) continue;
      outside += b.values[i] * b.values[i] * (std::pow(r - y, -2 * sg) + std::pow(r + y, -2 * sg)) / (2 * sg);
    }
    outside *= b.grid.spacing;
    const double c2 = normalization_constant(1, sg) / 2;
    CHECK(c2 * (semi * semi + outside) == doctest::Approx(full * full).epsilon(1e-4));
  }
  CHECK_THROWS_AS(gagliardo_seminorm(b, 1.0, GagliardoMode::full()), OutOfRange);
}

TEST_CASE("poincare constant is stable under refinement") {
  const std::vector<Descriptor> battery = {getoor_solution(1, 0.25, 1), getoor_solution(1, 0.75, 1),
                                           Descriptor::parse("bump")};
  for (double sg : {0.25, 0.5, 0.75}) {
    double c1 = 0, c2 = 0;
    for (const auto& fn : battery) {
      const auto a = zero_ext(fn, 1536), b = zero_ext(fn, 3072);
      c1 = std::max(c1, l2_norm_on(a, a.domain) / gagliardo_seminorm(a, sg, GagliardoMode::full()));
      c2 = std::max(c2, l2_norm_on(b, b.domain) / gagliardo_seminorm(b, sg, GagliardoMode::full()));
    }
    CHECK(std::isfinite(c1));
    CHECK(std::abs(c1 / c2 - 1) < 0.1);
  }
}

TEST_CASE("dirichlet functional") {
  const Grid g = Grid::box({-1.5}, 3.0, 600);
  const Domain om = Domain::interval(-1, 1);
  const FracParams p(0.4, 1);
  const auto zero = sample(Descriptor::constant(0.0), g, om, true);
  const auto one = sample(Descriptor::constant(1.0), g, om, false);
  const auto fz = dirichlet_functional(zero, one, p);
  CHECK(fz.F == 0.0);
  CHECK(fz.F1 == 0.0);
  CHECK(fz.F2 == 0.0);
  const auto u = sample(getoor_solution(1, 0.4, 1), g, om);
  const auto fu = dirichlet_functional(u, zero, p);
  CHECK(fu.F == fu.F2);
  CHECK(fu.F2 > 0.0);
  // F1 is the nodal pairing: for f = 1 and u = getoor, about int u
  const auto f1 = dirichlet_functional(u, one, p);
  CHECK(f1.F == doctest::Approx(f1.F2 - f1.F1));
}

TEST_CASE("regularity moduli") {
  const double s = 0.25;
  const Grid g = Grid::box({-1.5}, 3.0, 3 * 1024);
  const Domain om = Domain::interval(-1, 1);
  const FracParams p(s, 1);
  const auto u = sample(getoor_solution(1, s, 1), g, om);
  const auto f = sample(Descriptor::constant(1.0), g, om, false);
  const auto zero = sample(Descriptor::constant(0.0), g, om, true);
  const Vec x0 = {0.0};
  const Cutoff cut(x0, 0.2);
  const Cone cone({1.0}, 0.5, 0.5);
  std::vector<Vec> steps;
  for (long m = 4; m * g.spacing <= 0.2; m *= 2) steps.push_back({m * g.spacing});

  for (auto which : {Functional::F, Functional::F1, Functional::F2})
    CHECK(regularity_modulus(which, zero, f, p, cone, cut, 2 * s, steps) == 0.0);

  const double wF = regularity_modulus(Functional::F, u, f, p, cone, cut, 2 * s, steps);
  const double w1 = regularity_modulus(Functional::F1, u, f, p, cone, cut, 2 * s, steps);
  const double w2 = regularity_modulus(Functional::F2, u, f, p, cone, cut, 2 * s, steps);
  CHECK(std::isfinite(wF));
  CHECK(wF <= w1 + w2 + 1e-12);

  // interior cutoff, gamma = 2s: ratios do not grow as |h| shrinks (steps run upward here)
  const auto r = regularity_ratios(Functional::F, u, f, p, cone, cut, 2 * s, steps);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i - 1] <= 1.1 * r[i]);

  const std::vector<Vec> bad = {{-4 * g.spacing}};
  CHECK_THROWS_AS(regularity_modulus(Functional::F, u, f, p, cone, cut, 2 * s, bad), InvalidArgument);
}

TEST_CASE("derivative seminorm") {
  // affine functions have zero derivative oscillation
  const Grid g = Grid::box({0.0}, 1.0, 512);
  const auto aff = sample_fn([](std::span<const double> x) { return 1 - 2 * x[0]; }, g, Domain::interval(0, 1), false);
  CHECK(derivative_seminorm(aff, 0.3) < 1e-10);
  const auto xp = sample(Descriptor::parse("power:1"), Grid::box({-1.0}, 2.0, 1024), Domain::interval(-1, 1));
  CHECK(derivative_seminorm(xp, 0.2) > 0.0);
}
