#include "fraclap/harness.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "fraclap/besov.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/fracop.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/solver1d.hpp"

namespace fraclap {

std::string RateEstimate::verdict(double sigma) const {
  if (std::isinf(sigma_star)) return "bounded";
  if (rows.size() < 4) throw InvalidArgument("verdict needs at least 4 steps");
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 4; i-- > 0;) {
    const double r = rows[i].omega / std::pow(rows[i].h, sigma);
    if (!(r > prev)) return "bounded";
    prev = r;
  }
  return "growing";
}

RateEstimate estimate_index(const ModulusProfile& profile) {
  auto rows = profile.rows;
  if (rows.size() < 5) throw InvalidArgument("index estimate needs at least 5 steps");
  std::sort(rows.begin(), rows.end(), [](const ModulusRow& a, const ModulusRow& b) { return a.h < b.h; });
  if (!(rows.front().h > 0.0) || std::log2(rows.back().h / rows.front().h) < 3.0 - 1e-9)
    throw InvalidArgument("index estimate needs steps spanning 3 octaves");
  RateEstimate est;
  est.rows = rows;
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& r : rows)
    if (r.omega == 0.0) {
      est.sigma_star = est.ci_low = est.ci_high = inf;
      est.r2 = 1.0;
      return est;
    }
  std::vector<double> X, Y;
  for (const auto& r : rows)
    if (r.h <= 10.0 * rows.front().h * (1 + 1e-12) || X.size() < 3) {
      X.push_back(std::log(r.h));
      Y.push_back(std::log(r.omega));
    }
  const double n = static_cast<double>(X.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < X.size(); ++i) mx += X[i], my += Y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  const double slope = sxy / sxx;
  double sse = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double e = Y[i] - my - slope * (X[i] - mx);
    sse += e * e;
  }
  est.sigma_star = slope;
  est.r2 = syy > 0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  const double se = std::sqrt(sse / (n - 2.0) / sxx);
  boost::math::students_t dist(n - 2.0);
  const double tq = boost::math::quantile(dist, 0.975);
  est.ci_low = slope - tq * se;
  est.ci_high = slope + tq * se;
  return est;
}

ModulusProfile index_profile(const GridFunction& v, double h_max) {
  const auto steps = dyadic_steps(v.grid, h_max, 4);
  const Restriction where = v.meta.zero_extended ? Restriction::whole_space() : Restriction::inner(v.domain);
  return modulus(v, 2, steps, where);
}

PredictedIndex predicted_index(double s, const DataClass& dc) {
  if (!(s > 0.0 && s < 1.0)) throw OutOfRange("predicted index needs s in (0, 1)");
  const bool half = std::abs(s - 0.5) < 1e-15;
  switch (dc.kind) {
    case DataClass::Kind::l2:
      return {s + std::min(s, 0.5), half, dc};
    case DataClass::Kind::rough:
      if (s <= 0.5) throw InvalidArgument("rough data needs s > 1/2");
      return {s + 0.5, false, dc};
    case DataClass::Kind::intermediate:
      if (!(dc.theta > 0.0 && dc.theta < std::min(s, 0.5))) throw InvalidArgument("theta must lie in (0, min(s, 1/2))");
      // At s = 1/2 the gain is only up to an epsilon loss.
      return {s + dc.theta, half, dc};
  }
  throw InvalidArgument("unknown data class");
}

std::vector<double> bootstrap_sequence(double s, BootstrapVariant variant, std::size_t n) {
  std::vector<double> out;
  if (variant == BootstrapVariant::l2) {
    if (!(s > 0.0 && s <= 0.5)) throw InvalidArgument("the L2 bootstrap needs s in (0, 1/2]");
    for (std::size_t j = 0; j < n; ++j) out.push_back(2.0 * s * (1.0 - std::ldexp(1.0, -static_cast<int>(j))));
  } else {
    if (!(s > 0.5 && s < 1.0)) throw InvalidArgument("the rough bootstrap needs s in (1/2, 1)");
    for (std::size_t j = 0; j < n; ++j) out.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(j) - 1));
  }
  return out;
}

namespace {

double load_l2(const Descriptor& f, const Domain& dom) {
  double acc = 0.0;
  for (const auto& iv : dom.pieces())
    acc += graded_gauss(
        [&](double x) {
          const double y = f(std::span<const double>(&x, 1));
          return y * y;
        },
        iv.a, iv.b, 8, 10);
  return std::sqrt(acc);
}

SweepRow sweep_row(double s, const SweepConfig& cfg, const Descriptor& f) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRow row{s, nan, nan, nan, nan, nan, false, nan, ""};
  try {
    const auto pred = predicted_index(s, DataClass::l2());
    row.predicted = pred.value;
    row.open_endpoint = pred.open_endpoint;
    const Mesh mesh = Mesh::uniform(cfg.domain, cfg.n);
    const FracParams params(s, 1);
    const auto sol = solve_dirichlet(mesh, params, f);
    const double len = mesh.nodes.back() - mesh.nodes.front();
    const auto est = estimate_index(index_profile(sol.u, 0.25 * len));
    row.sigma_star = est.sigma_star;
    row.ci_low = est.ci_low;
    row.ci_high = est.ci_high;
    row.r2 = est.r2;
    const double sigma = s < 0.5 ? 2.0 * s : pred.value;
    const double dq = dq_seminorm(sol.u, BesovIndex(sigma), DirectionSet::ball(0.25 * len), Restriction::whole_space());
    const double fl2 = load_l2(f, cfg.domain);
    row.R = fl2 > 0 ? (dq + sol.report.l2) / fl2 : nan;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_s(const SweepConfig& cfg) {
  const Descriptor f = Descriptor::parse(cfg.f);
  std::vector<double> ss = cfg.s;
  for (double s : ss)
    if (!(s >= 0.05 && s <= 0.95)) throw InvalidArgument("sweep s values must lie in [0.05, 0.95]");
  std::sort(ss.begin(), ss.end());
  std::vector<SweepRow> out;
  for (double s : ss) out.push_back(sweep_row(s, cfg, f));
  return out;
}

}  // namespace fraclap
