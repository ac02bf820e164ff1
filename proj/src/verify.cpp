#include "fraclap/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fraclap/besov.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/fracop.hpp"
#include "fraclap/io.hpp"

namespace fraclap {

namespace {

using Rows = std::vector<CheckRow>;

std::string tagged(const std::string& base, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", base.c_str(), x);
  return buf;
}

// Ten interior points at distance >= 0.1 from the unit sphere.
std::vector<Vec> interior_points(int d) {
  std::vector<Vec> pts;
  for (int k = 0; k < 10; ++k) {
    if (d == 1) {
      pts.push_back({-0.855 + 0.19 * k});
    } else {
      const double r = 0.9 * std::sqrt((k + 0.5) / 10.0);
      const double a = 2.399963229728653 * k;
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
  }
  return pts;
}

Rows suite_getoor(const SuiteOptions& opt) {
  const double tol = opt.tol.value_or(1e-4);
  Rows rows;
  for (int d = 1; d <= 2; ++d)
    for (double s : opt.s) {
      const FracParams p(s, d);
      const Descriptor u = getoor_solution(d, s, 1.0);
      double worst = 0.0;
      for (const auto& x : interior_points(d)) {
        const auto v = apply_pointwise(u, x, p, std::clamp(tol * 1e-2, 1e-10, 1e-3));
        worst = std::max(worst, std::abs(v.value - 1.0));
      }
      rows.push_back({"getoor", "d=" + std::to_string(d) + " " + tagged("s", s), worst, tol, worst <= tol});
    }
  return rows;
}

GridFunction random_compact(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  GridFunction v{g, std::vector<double>(g.size(), 0.0), Domain::interval(0, 1), {}};
  if (g.dim() == 2) v.domain = Domain::ball({0.0, 0.0}, 1.0);
  for (std::size_t f = 0; f < g.size(); ++f) {
    const Vec x = g.point(f);
    if (norm(x) < 0.25) v.values[f] = U(rng);
  }
  return v;
}

Rows suite_cone(const SuiteOptions& opt) {
  const double tol = opt.tol.value_or(1e-12);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Rows rows;

  // Pointwise second-difference identity on random compactly supported grid data.
  for (int d = 1; d <= 2; ++d) {
    const Grid g = Grid::box(Vec(static_cast<std::size_t>(d), -1.0), 2.0, d == 1 ? 400 : 80);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const GridFunction v = random_compact(g, rng);
      Vec h1(static_cast<std::size_t>(d)), h2(static_cast<std::size_t>(d));
      std::uniform_int_distribution<long> M(-8, 8);
      for (int k = 0; k < d; ++k) {
        h1[k] = static_cast<double>(M(rng)) * g.spacing;
        h2[k] = static_cast<double>(M(rng)) * g.spacing;
      }
      worst = std::max(worst, cone_identity_residual(v, h1, h2));
    }
    rows.push_back({"cone-identity", "second-difference identity d=" + std::to_string(d), worst, tol, worst <= tol});
  }

  // decompose_direction and split_two_term on random directions.
  const Cone cone({1.0, 0.0}, std::numbers::pi / 4, 0.5);
  const double c = cone.generating_constant(), r0 = cone.generating_radius();
  double sum_err = 0.0, excess = 0.0, split_err = 0.0;
  int outside = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Vec h = {U(rng), U(rng)};
    const double scale = 0.5 * r0 * std::abs(U(rng)) / std::max(norm(h), 1e-300);
    for (auto& x : h) x *= scale;
    const auto parts = decompose_direction(cone, h);
    Vec sum(2, 0.0);
    double len = 0.0;
    for (const auto& p : parts) {
      const Vec neg = {-p[0], -p[1]};
      if (!cone.contains(p) && !cone.contains(neg)) ++outside;
      sum[0] += p[0];
      sum[1] += p[1];
      len += norm(p);
    }
    sum_err = std::max(sum_err, std::hypot(sum[0] - h[0], sum[1] - h[1]));
    excess = std::max(excess, len - c * norm(h));
    const auto sp = split_two_term(cone, h);
    const Cone half = cone.scaled(0.5);
    if (!half.contains(sp.plus) || !half.contains(sp.minus)) ++outside;
    split_err = std::max(split_err, std::hypot(sp.plus[0] - sp.minus[0] - h[0], sp.plus[1] - sp.minus[1] - h[1]));
  }
  rows.push_back({"cone-identity", "decompose sum", sum_err, tol, sum_err <= tol});
  rows.push_back({"cone-identity", "decompose length excess", excess, tol, excess <= tol});
  rows.push_back({"cone-identity", "pieces outside +-C", static_cast<double>(outside), 0.0, outside == 0});
  rows.push_back({"cone-identity", "two-term split", split_err, tol, split_err <= tol});

  // Two-sided cone/ball bound on the d = 2 battery.
  const Grid g2 = Grid::box({-1.5, -1.5}, 3.0, 128);
  const Domain ball = Domain::ball({0.0, 0.0}, 1.0);
  std::vector<GridFunction> battery = {
      sample(getoor_solution(2, 0.25, 1.0), g2, ball), sample(getoor_solution(2, 0.75, 1.0), g2, ball),
      sample(Descriptor::parse("bump"), g2, ball),
      sample_fn(
          [](std::span<const double> x) {
            const double r2 = x[0] * x[0] + x[1] * x[1];
            return r2 < 1.0 ? (1.0 + x[0]) * std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
          },
          g2, ball, true, "ramp*bump")};
  const auto ws = Restriction::whole_space();
  for (const auto& v : battery)
    for (double sg : {0.5, 1.0, 1.5}) {
      const BesovIndex idx(sg);
      const double vc = dq_seminorm(v, idx, DirectionSet::of_cone(cone), ws);
      const double vb = dq_seminorm(v, idx, DirectionSet::ball(cone.radius()), ws);
      const double vs = dq_seminorm(v, idx, DirectionSet::ball(r0 / 2), ws);
      const double k = std::pow(c, sg) * (std::pow(2.0, sg) + 1.0);
      const std::string nm = v.meta.source + " " + tagged("sigma", sg);
      rows.push_back({"cone-identity", "cone<=ball " + nm, vc / vb, 1.0, vc <= vb * (1 + 1e-12)});
      rows.push_back({"cone-identity", "ball/2<=k*cone " + nm, vs / (k * vc), 1.0, vs <= k * vc});
    }
  return rows;
}

Rows suite_marchaud(const SuiteOptions& opt) {
  const double bound = opt.tol.value_or(100.0);
  const Grid g = Grid::box({-1.5}, 3.0, 3 * 4096);
  const Domain om = Domain::interval(-1.0, 1.0);
  Rows rows;
  const auto a = marchaud_check(sample(getoor_solution(1, 0.5, 1.0), g, om), 0.9, 0.25);
  rows.push_back({"marchaud", "getoor d=1 s=0.5 sigma=0.9", a.ratio, bound, a.ratio <= bound});
  const auto b = marchaud_check(sample(Descriptor::parse("bump"), g, om), 0.5, 0.25);
  rows.push_back({"marchaud", "bump sigma=0.5", b.ratio, bound, b.ratio <= bound});
  const auto z = marchaud_check(sample(Descriptor::constant(0.0), g, om, true), 0.5, 0.25);
  rows.push_back({"marchaud", "zero", z.ratio, 0.0, z.lhs == 0.0 && z.ratio == 0.0});
  return rows;
}

Rows suite_kfunctional(const SuiteOptions& opt) {
  const double tol = opt.tol.value_or(1e-3);
  const std::size_t n = 4096;
  const Grid g = Grid::box({0.0}, 1.0, n);
  const auto one = sample(Descriptor::constant(1.0), g, Domain::interval(0.0, 1.0), false);
  Rows rows;
  const std::vector<double> ts = {0.1, 1.0, 10.0};
  const auto kp = k_functional(one, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double err = std::abs(kp.ks[i] - ts[i] / std::sqrt(1 + ts[i] * ts[i]));
    rows.push_back({"k-functional", tagged("K(t,1) t", ts[i]), err, tol, err <= tol});
  }
  const auto wide = k_functional(one, log_spaced(4.0 / n, 1e3, 20));
  const double in = interpolation_norm(one, BesovIndex(0.5), wide);
  const double err = std::abs(in - std::sqrt(0.5));
  rows.push_back({"k-functional", "interpolation norm theta=1/2", err, tol, err <= tol});
  const auto viol = kprofile_violations(wide);
  rows.push_back({"k-functional", "profile invariants", static_cast<double>(viol.size()), 0.0, viol.empty()});
  return rows;
}

struct BatteryFn {
  std::string name;
  double (*f)(double);
};

const std::vector<BatteryFn>& equivalence_battery() {
  static const std::vector<BatteryFn> b = {
      {"sqrt(x(1-x))", [](double x) { return std::sqrt(std::max(x * (1 - x), 0.0)); }},
      {"x^0.75", [](double x) { return std::pow(std::max(x, 0.0), 0.75); }},
      {"|x-1/2|^0.8", [](double x) { return std::pow(std::abs(x - 0.5), 0.8); }},
      {"(x-1/2)+", [](double x) { return std::max(x - 0.5, 0.0); }},
      {"sin(pi x)sqrt(x)", [](double x) { return std::sin(std::numbers::pi * x) * std::sqrt(std::max(x, 0.0)); }}};
  return b;
}

}  // namespace

double equivalence_ratio(double (*f)(double), std::size_t n, double sigma) {
  const Grid g = Grid::box({0.0}, 1.0, n);
  const Domain om = Domain::interval(0.0, 1.0);
  const auto v = sample_fn([f](std::span<const double> x) { return f(x[0]); }, g, om, false);
  const BesovIndex idx(sigma);
  const auto kp = k_functional(v, log_spaced(4.0 / static_cast<double>(n), 1e3, 20));
  const double interp = interpolation_norm(v, idx, kp);
  const double dq = dq_seminorm(v, idx, DirectionSet::ball(0.25), Restriction::inner(om));
  return interp / (l2_norm_on(v, om) + dq);
}

namespace {

Rows suite_equivalence(const SuiteOptions&) {
  Rows rows;
  for (const auto& fn : equivalence_battery())
    for (double sg : {0.3, 0.7}) {
      const double coarse = equivalence_ratio(fn.f, 1024, sg);
      const double fine = equivalence_ratio(fn.f, 4096, sg);
      const double drift = std::max(coarse / fine, fine / coarse);
      const std::string nm = fn.name + " " + tagged("sigma", sg);
      rows.push_back({"equivalence", "ratio " + nm, fine, 10.0, fine >= 0.1 && fine <= 10.0 && coarse >= 0.1 && coarse <= 10.0});
      rows.push_back({"equivalence", "drift " + nm, drift, 2.0, drift < 2.0});
    }
  return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"getoor", "cone-identity", "marchaud", "k-functional", "equivalence"};
  return names;
}

std::vector<CheckRow> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "getoor") return suite_getoor(opt);
  if (name == "cone-identity") return suite_cone(opt);
  if (name == "marchaud") return suite_marchaud(opt);
  if (name == "k-functional") return suite_kfunctional(opt);
  if (name == "equivalence") return suite_equivalence(opt);
  throw InvalidArgument("unknown suite: " + name);
}

void write_check_table(std::ostream& os, const std::vector<CheckRow>& rows) {
  os << "suite,case,value,bound,status\n";
  for (const auto& r : rows)
    os << r.suite << "," << (r.name.find(',') != std::string::npos ? '"' + r.name + '"' : r.name) << "," << fmt(r.value) << "," << fmt(r.bound) << "," << (r.pass ? "pass" : "FAIL")
       << "\n";
}

}  // namespace fraclap
