#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fraclap/besov.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/fracop.hpp"

using namespace fraclap;

namespace {

GridFunction on_interval(const Descriptor& fn, std::size_t n) {
  return sample(fn, Grid::box({-1.5}, 3.0, n), Domain::interval(-1, 1));
}

}  // namespace

TEST_CASE("besov index") {
  CHECK_THROWS_AS(BesovIndex(0.0), InvalidArgument);
  CHECK_THROWS_AS(BesovIndex(2.0), InvalidArgument);
  CHECK_THROWS_AS(BesovIndex(1.0, 0.5), InvalidArgument);
  const BesovIndex a(1.2), b(1.2, 2.0);
  CHECK(a.q_infinite());
  CHECK(!b.q_infinite());
  CHECK(a.theta_h2() == doctest::Approx(0.6));
  CHECK(BesovIndex(0.4).theta_h1() == doctest::Approx(0.4));
}

TEST_CASE("direction samples") {
  const Grid g = Grid::box({-1.0}, 2.0, 1024);
  const auto one = sample_directions(DirectionSet::ball(0.25), g, true);
  CHECK(one.front()[0] == doctest::Approx(0.25));
  CHECK(one.back()[0] >= 4 * g.spacing - 1e-15);
  CHECK(sample_directions(DirectionSet::ball(0.25), g, false).size() == 2 * one.size());
  const Grid g2 = Grid::box({-1.0, -1.0}, 2.0, 128);
  const Cone c({1.0, 0.0}, std::numbers::pi / 4, 0.5);
  for (const auto& h : sample_directions(DirectionSet::of_cone(c), g2)) CHECK(c.contains(h));
  CHECK_THROWS_AS(dq_seminorm(sample(Descriptor::parse("power:1"), g, Domain::interval(-1, 1)), BesovIndex(1.0),
                              DirectionSet::ball(g.spacing), Restriction::whole_space()),
                  InvalidArgument);
}

TEST_CASE("difference-quotient seminorm") {
  const Grid g = Grid::box({-1.0}, 2.0, 1 << 14);
  const Domain om = Domain::interval(-1, 1);
  const auto xp = sample(Descriptor::parse("power:1"), g, om);
  const double v = dq_seminorm(xp, BesovIndex(1.5), DirectionSet::ball(0.25), Restriction::inner(om));
  CHECK(std::abs(v - std::sqrt(2.0 / 3.0)) < 1e-3);

  const auto aff = sample_fn([](std::span<const double> x) { return 4 * x[0] - 1; }, Grid::box({-1.0}, 2.0, 512), om, false);
  for (double sg : {0.3, 1.0, 1.7}) {
    CHECK(dq_seminorm(aff, BesovIndex(sg), DirectionSet::ball(0.25), Restriction::inner(om)) < 1e-10);
    CHECK(dq_seminorm(aff, BesovIndex(sg, 2.0), DirectionSet::ball(0.25), Restriction::inner(om)) < 1e-10);
  }

  // finite q on an exact power law: omega = a h^{3/2} gives an explicit value
  // q sigma (2 - sigma) int_0^rho (a h^{3/2 - sigma})^q 2 dh/h, sigma < 3/2
  const double a = std::sqrt(2.0 / 3.0), sg = 1.25, q = 2.0, rho = 0.25;
  const double exact = std::pow(q * sg * (2 - sg) * 2 * std::pow(a, q) * std::pow(rho, q * (1.5 - sg)) / (q * (1.5 - sg)), 1 / q);
  const double got = dq_seminorm(xp, BesovIndex(sg, q), DirectionSet::ball(rho), Restriction::inner(om));
  CHECK(got == doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("cone seminorm is bracketed by ball seminorms in d = 2") {
  const Grid g = Grid::box({-1.5, -1.5}, 3.0, 192);
  const Domain ball = Domain::ball({0.0, 0.0}, 1.0);
  const auto v = sample(getoor_solution(2, 0.5, 1.0), g, ball);
  const Cone cone({0.0, 1.0}, std::numbers::pi / 4, 0.5);
  const double c = cone.generating_constant(), r0 = cone.generating_radius();
  for (double sg : {0.5, 1.2}) {
    const double vc = dq_seminorm(v, BesovIndex(sg), DirectionSet::of_cone(cone), Restriction::whole_space());
    const double vb = dq_seminorm(v, BesovIndex(sg), DirectionSet::ball(0.5), Restriction::whole_space());
    const double vs = dq_seminorm(v, BesovIndex(sg), DirectionSet::ball(r0 / 2), Restriction::whole_space());
    CHECK(vc <= vb);
    CHECK(vs <= std::pow(c, sg) * (std::pow(2.0, sg) + 1) * vc);
  }
}

TEST_CASE("K-functional") {
  const std::size_t n = 1 << 12;
  const Grid g = Grid::box({0.0}, 1.0, n);
  const Domain om = Domain::interval(0, 1);
  const auto one = sample(Descriptor::constant(1.0), g, om, false);
  const std::vector<double> ts = {0.1, 1.0, 10.0};
  const auto kp = k_functional(one, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(std::abs(kp.ks[i] - ts[i] / std::hypot(1.0, ts[i])) < 1e-3);

  const auto wide = k_functional(one, log_spaced(1e-4, 1e4, 10));
  CHECK(kprofile_violations(wide).empty());
  CHECK(wide.ks.front() < 2e-4);
  CHECK(wide.ks.back() <= wide.l2);
  CHECK(wide.ks.back() == doctest::Approx(wide.l2).epsilon(1e-6));

  const auto bump = sample(Descriptor::parse("bump:0.4"), g, om, false);
  CHECK(kprofile_violations(k_functional(bump, log_spaced(1e-4, 1e3, 10))).empty());

  KProfile bad = wide;
  bad.ks[3] = bad.ks[4] * 1.5;
  CHECK(!kprofile_violations(bad).empty());
  CHECK_THROWS_AS(k_functional(one, ts, "H-1,H1"), InvalidArgument);
}

TEST_CASE("interpolation norm") {
  const std::size_t n = 1 << 12;
  const Grid g = Grid::box({0.0}, 1.0, n);
  const Domain om = Domain::interval(0, 1);
  const auto one = sample(Descriptor::constant(1.0), g, om, false);
  const auto kp = k_functional(one, log_spaced(1e-3, 1e3, 20));
  CHECK(interpolation_norm(one, BesovIndex(0.5), kp) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));

  // finite q: q theta (1-theta) int t^{-1-theta q} (t^2/(1+t^2))^{q/2} dt for q = 2, theta = 1/2
  // equals 1/2 int_0^inf dt / (1+t^2) = pi/4
  const auto r = interpolation_norm(kp, BesovIndex(0.5, 2.0));
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi / 4)).epsilon(1e-3));
  CHECK(r.tail_bound >= 0.0);

  const auto zero = sample(Descriptor::constant(0.0), g, om, false);
  CHECK(interpolation_norm(zero, BesovIndex(0.5), k_functional(zero, log_spaced(1e-3, 1e3, 5))) == 0.0);

  std::vector<double> prev;
  for (double th : {0.2, 0.4, 0.6, 0.8}) {
    const double x = interpolation_norm(one, BesovIndex(th), kp);
    CHECK(std::isfinite(x));
    CHECK(x > 0.0);
  }
  const auto narrow = k_functional(one, log_spaced(0.5, 2.0, 10));
  CHECK_THROWS_AS(interpolation_norm(one, BesovIndex(0.5), narrow), InvalidArgument);
}

TEST_CASE("marchaud check") {
  const std::size_t n = 3 * 2048;
  const auto z = marchaud_check(sample(Descriptor::constant(0.0), Grid::box({-1.5}, 3.0, n), Domain::interval(-1, 1), true),
                                0.5, 0.25);
  CHECK(z.lhs == 0.0);
  CHECK(z.ratio == 0.0);
  const auto a = marchaud_check(on_interval(getoor_solution(1, 0.5, 1), n), 0.9, 0.25);
  CHECK(a.ratio <= 100.0);
  CHECK(a.ratio > 0.0);
  const auto b = marchaud_check(on_interval(Descriptor::parse("bump"), n), 0.5, 0.25);
  CHECK(b.ratio <= 100.0);
  CHECK_THROWS_AS(marchaud_check(on_interval(Descriptor::parse("bump"), n), 0.97, 0.25), OutOfRange);
}

TEST_CASE("localization") {
  const auto u = on_interval(getoor_solution(1, 0.5, 1), 3 * 2048);
  const BesovIndex idx(0.9);
  const auto dirs = DirectionSet::ball(0.25);

  const Covering single({{0.0}}, 2.0);
  const auto one = localize(u, single, idx, dirs);
  REQUIRE(one.per_ball.size() == 1);
  CHECK(one.aggregate == doctest::Approx(one.global).epsilon(1e-14));

  const Covering two({{-1.1}, {1.1}}, 1.2);
  const auto loc = localize(u, two, idx, dirs);
  CHECK(loc.aggregate / loc.global >= 0.25);
  CHECK(loc.aggregate / loc.global <= 4.0);

  // support inside the left ball only
  const Grid g = Grid::box({-3.0}, 6.0, 3 * 2048);
  GridFunction left = sample(getoor_solution(1, 0.5, 0.5), g, Domain::interval(-3, 3));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0] + 2.0;
    left.values[i] = std::abs(x) < 0.5 ? std::sqrt(0.25 - x * x) : 0.0;
  }
  left.meta.zero_extended = true;
  const Covering apart({{-2.0}, {1.5}}, 1.8);
  const auto lp = localize(left, apart, idx, dirs);
  CHECK(lp.per_ball[1] < 1e-12);
  CHECK(lp.per_ball[0] > 0.0);

  const Covering thin({{0.0}}, 0.5);
  CHECK_THROWS_AS(localize(u, thin, idx, dirs), InvalidArgument);
}

TEST_CASE("reiteration bound") {
  const Grid g = Grid::box({-1.5}, 3.0, 3 * 2048);
  const Domain om = Domain::interval(-1, 1);
  const auto steps = dyadic_steps(g, 0.25);
  const auto aff = sample_fn([](std::span<const double> x) { return 1 + x[0]; }, g, om, false);
  const auto [la, ra] = reiteration_bound(aff, 0.5, 0.5, steps);
  CHECK(la < 1e-10);
  CHECK(ra < 1e-10);
  const auto xp = sample(Descriptor::parse("power:1"), g, om);
  const auto [lx, rx] = reiteration_bound(xp, 0.75, 0.75, steps);
  CHECK(lx <= 10 * rx);
  const auto gt = sample(getoor_solution(1, 0.25, 1), g, om);
  const auto [lg, rg] = reiteration_bound(gt, 0.25, 0.5, steps);
  CHECK(lg <= 10 * rg);
}

TEST_CASE("embedding into sobolev spaces with explicit blow-up") {
  const Grid g = Grid::box({-1.0}, 2.0, 1 << 13);
  const Domain om = Domain::interval(-1, 1);
  const auto xp = sample(Descriptor::parse("power:1"), g, om);
  const double dq = dq_seminorm(xp, BesovIndex(1.5), DirectionSet::ball(0.25), Restriction::inner(om));
  for (double eps : {0.05, 0.1, 0.2}) {
    const double hs = derivative_seminorm(xp, 0.5 - eps);
    CHECK(std::isfinite(hs));
    CHECK(hs <= 100 / std::sqrt(eps) * dq);
  }
}
