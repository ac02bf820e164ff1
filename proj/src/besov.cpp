#include "fraclap/besov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "fraclap/errors.hpp"
#include "fraclap/fracop.hpp"
#include "fraclap/kernels.hpp"

namespace fraclap {

BesovIndex::BesovIndex(double s, double q_) : sigma(s), q(q_) {
  if (!(sigma > 0.0 && sigma < 2.0)) throw InvalidArgument("Besov index sigma must lie in (0, 2)");
  if (!(q >= 1.0)) throw InvalidArgument("Besov index q must lie in [1, inf]");
}

DirectionSet DirectionSet::ball(double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("direction ball radius must be positive");
  return {Kind::ball, rho, std::nullopt};
}

DirectionSet DirectionSet::of_cone(const Cone& c) { return {Kind::cone, c.radius(), c}; }

namespace {

struct Sampled {
  Offset m;
  int shell;
};

std::vector<Vec> lattice_rays(int d, bool half) {
  std::vector<Vec> rays;
  if (d == 1) {
    rays.push_back({1.0});
    if (!half) rays.push_back({-1.0});
  } else if (d == 2) {
    for (int j = 0; j < 8; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / 16.0;
      rays.push_back({std::cos(phi), std::sin(phi)});
    }
    if (!half)
      for (int j = 0; j < 8; ++j) rays.push_back({-rays[j][0], -rays[j][1]});
  } else {
    // Axes, face and body diagonals; first of each +/- pair.
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          const bool first = a > 0 || (a == 0 && (b > 0 || (b == 0 && c > 0)));
          if (half && !first) continue;
          const double n = std::sqrt(static_cast<double>(a * a + b * b + c * c));
          rays.push_back({a / n, b / n, c / n});
        }
  }
  return rays;
}

std::vector<Sampled> sample_offsets(const DirectionSet& dirs, const Grid& grid, bool symmetric, long min_cells) {
  const int d = grid.dim();
  const bool is_cone = dirs.kind == DirectionSet::Kind::cone;
  if (is_cone && dirs.cone->dim() != d) throw InvalidArgument("cone dimension does not match the grid");
  const auto rays = lattice_rays(d, symmetric && !is_cone);
  std::vector<Sampled> out;
  std::set<Offset> seen;
  for (int k = 0;; ++k) {
    const double r = dirs.radius * std::ldexp(1.0, -k);
    if (r < static_cast<double>(min_cells) * grid.spacing * (1 - 1e-12)) break;
    for (const auto& ray : rays) {
      Offset m(static_cast<std::size_t>(d));
      double len2 = 0.0;
      for (int c = 0; c < d; ++c) {
        m[c] = std::lround(r * ray[c] / grid.spacing);
        len2 += static_cast<double>(m[c] * m[c]);
      }
      if (std::sqrt(len2) < static_cast<double>(min_cells) - 1e-9) continue;
      if (is_cone && !dirs.cone->contains(grid.vector(m))) continue;
      if (!is_cone && std::sqrt(len2) * grid.spacing > dirs.radius * (1 + 1e-12)) continue;
      if (!seen.insert(m).second) continue;
      out.push_back({m, k});
    }
  }
  return out;
}

Restriction resolve(const Restriction& where, const GridFunction& v) {
  if (where.kind == Restriction::Kind::inner && where.sets.empty()) return Restriction::inner(v.domain);
  return where;
}

}  // namespace

std::vector<Vec> sample_directions(const DirectionSet& dirs, const Grid& grid, bool symmetric, long min_cells) {
  std::vector<Vec> out;
  for (const auto& s : sample_offsets(dirs, grid, symmetric, min_cells)) out.push_back(grid.vector(s.m));
  return out;
}

double dq_seminorm(const GridFunction& v, const BesovIndex& idx, const DirectionSet& dirs, const Restriction& where) {
  const auto sample = sample_offsets(dirs, v.grid, true, 4);
  if (sample.empty()) throw InvalidArgument("no aligned steps fit the direction set");
  std::vector<Offset> offs;
  for (const auto& s : sample) offs.push_back(s.m);
  const auto om = kernels::difference_norms(v, 2, offs, resolve(where, v));
  const double sg = idx.sigma;
  if (idx.q_infinite()) {
    double best = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
      best = std::max(best, om[i] / std::pow(norm(v.grid.vector(sample[i].m)), sg));
    return best;
  }
  // Finite q: shell integral in log |h|, angular sum weighted by the sphere measure.
  const double q = idx.q;
  const int d = v.grid.dim();
  const bool is_cone = dirs.kind == DirectionSet::Kind::cone;
  const double rays = static_cast<double>(lattice_rays(d, !is_cone).size());
  const double sphere = d == 1 ? 2.0 : (d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
  // A symmetric ball sample stands for both h and -h.
  const double per_ray = sphere / rays;
  // Moduli at rounding level (affine data) count as zero so the tail fit does not chase noise.
  double vmax = 0.0;
  for (double x : v.values) vmax = std::max(vmax, std::abs(x));
  const double floor = 1e-13 * vmax;
  std::map<int, double> shells;  // shell -> sum of per_ray omega^q
  for (std::size_t i = 0; i < sample.size(); ++i)
    shells[sample[i].shell] += om[i] > floor ? per_ray * std::pow(om[i], q) : 0.0;
  std::vector<double> logr, F, W;
  for (const auto& [k, w] : shells) {
    const double r = dirs.radius * std::ldexp(1.0, -k);
    logr.push_back(std::log(r));
    W.push_back(w);
    F.push_back(w * std::pow(r, -q * sg));
  }
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < F.size(); ++i) integral += 0.5 * (F[i] + F[i + 1]) * (logr[i] - logr[i + 1]);
  // Tail below the finest shell from the local rate omega ~ r^p.
  if (F.size() >= 2 && F.back() > 0.0) {
    const std::size_t a = F.size() - 2, b = F.size() - 1;
    const double p = W[a] > 0.0 ? (std::log(W[a]) - std::log(W[b])) / (q * (logr[a] - logr[b])) : 0.0;
    integral += p > sg ? F[b] / (q * (p - sg)) : std::numeric_limits<double>::infinity();
  }
  return std::pow(q * sg * (2.0 - sg) * integral, 1.0 / q);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t per_decade) {
  if (!(lo > 0.0 && hi > lo) || per_decade == 0) throw InvalidArgument("log_spaced needs 0 < lo < hi");
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade)));
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n)));
  return out;
}

KProfile k_functional(const GridFunction& u, const std::vector<double>& ts, const std::string& pair) {
  if (pair != "L2,H1") throw InvalidArgument("only the (L2, H1) pair is implemented");
  if (u.grid.dim() != 1 || u.domain.kind() != Domain::Kind::interval_union)
    throw InvalidArgument("K-functional needs an interval domain");
  if (ts.empty()) throw InvalidArgument("K-functional needs at least one t");
  for (double t : ts)
    if (!(t > 0.0)) throw InvalidArgument("K-functional needs positive t");
  const double dx = u.grid.spacing, x0 = u.grid.origin[0];
  const long nodes = static_cast<long>(u.values.size());
  std::vector<std::pair<long, long>> pieces;
  for (const auto& iv : u.domain.pieces()) {
    const long a = std::clamp(std::lround((iv.a - x0) / dx), 0L, nodes - 1);
    const long b = std::clamp(std::lround((iv.b - x0) / dx), 0L, nodes - 1);
    if (b - a < 1) throw InvalidArgument("interval is not resolved by the grid");
    pieces.emplace_back(a, b);
  }
  KProfile kp;
  kp.ts = ts;
  kp.pair = pair;
  kp.ks.assign(ts.size(), 0.0);
  double l2 = 0.0, semi = 0.0;
  for (const auto& [a, b] : pieces)
    for (long i = a; i <= b; ++i) {
      const double mu = (i == a || i == b) ? 0.5 * dx : dx;
      const double ui = u.values[static_cast<std::size_t>(i)];
      l2 += mu * ui * ui;
      if (i < b) {
        const double du = u.values[static_cast<std::size_t>(i + 1)] - ui;
        semi += du * du / dx;
      }
    }
  kp.l2 = std::sqrt(l2);
  kp.h1 = std::sqrt(l2 + semi);

  const long nt = static_cast<long>(ts.size());
#pragma omp parallel for schedule(dynamic)
  for (long it = 0; it < nt; ++it) {
    const double t2 = ts[static_cast<std::size_t>(it)] * ts[static_cast<std::size_t>(it)];
    double J = 0.0;
    for (const auto& [a, b] : pieces) {
      const std::size_t n = static_cast<std::size_t>(b - a + 1);
      std::vector<double> mu(n), diag(n), off(n, -t2 / dx), rhs(n), w(n);
      for (std::size_t i = 0; i < n; ++i) {
        const bool end = i == 0 || i + 1 == n;
        mu[i] = end ? 0.5 * dx : dx;
        diag[i] = mu[i] * (1.0 + t2) + t2 * (end ? 1.0 : 2.0) / dx;
        rhs[i] = mu[i] * u.values[static_cast<std::size_t>(a) + i];
      }
      // Thomas algorithm; the matrix is SPD and diagonally dominant.
      std::vector<double> c(n), e(n);
      c[0] = off[0] / diag[0];
      e[0] = rhs[0] / diag[0];
      for (std::size_t i = 1; i < n; ++i) {
        const double den = diag[i] - off[i - 1] * c[i - 1];
        if (!(den > 0.0)) throw ConvergenceError("K-functional system is not positive definite");
        c[i] = off[i] / den;
        e[i] = (rhs[i] - off[i - 1] * e[i - 1]) / den;
      }
      w[n - 1] = e[n - 1];
      for (std::size_t i = n - 1; i-- > 0;) w[i] = e[i] - c[i] * w[i + 1];
      for (std::size_t i = 0; i < n; ++i) {
        const double r = u.values[static_cast<std::size_t>(a) + i] - w[i];
        J += mu[i] * (r * r + t2 * w[i] * w[i]);
        if (i + 1 < n) J += t2 * (w[i + 1] - w[i]) * (w[i + 1] - w[i]) / dx;
      }
    }
    kp.ks[static_cast<std::size_t>(it)] = std::sqrt(std::max(J, 0.0));
  }
  return kp;
}

std::vector<std::string> kprofile_violations(const KProfile& kp, double slack) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < kp.ks.size(); ++i) {
    const double k = kp.ks[i], t = kp.ts[i];
    const double tol = slack * std::max(1.0, k);
    if (k < 0) out.push_back("negative K at t=" + std::to_string(t));
    if (k > std::min(kp.l2, t * kp.h1) + tol) out.push_back("K above min(|u|_0, t|u|_1) at t=" + std::to_string(t));
    if (i + 1 < kp.ks.size()) {
      if (kp.ts[i + 1] <= t) out.push_back("t not increasing");
      if (kp.ks[i + 1] < k - tol) out.push_back("K decreasing at t=" + std::to_string(t));
      if (kp.ks[i + 1] / kp.ts[i + 1] > k / t + slack * std::max(1.0, k / t))
        out.push_back("K/t increasing at t=" + std::to_string(t));
    }
  }
  return out;
}

InterpolationNorm interpolation_norm(const KProfile& kp, const BesovIndex& idx) {
  const double th = idx.theta_h1();
  if (!(th > 0.0 && th < 1.0)) throw InvalidArgument("(L2, H1) interpolation needs theta in (0, 1)");
  if (kp.ts.size() < 2) throw InvalidArgument("insufficient t coverage");
  if (kp.l2 == 0.0) return {0.0, 0.0};
  // Crossover K(t*) = |u|_0 / sqrt 2.
  const double target = kp.l2 / std::sqrt(2.0);
  double tstar = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i + 1 < kp.ts.size(); ++i)
    if (kp.ks[i] <= target && kp.ks[i + 1] >= target) {
      const double a = (target - kp.ks[i]) / std::max(kp.ks[i + 1] - kp.ks[i], 1e-300);
      tstar = std::exp(std::log(kp.ts[i]) + a * (std::log(kp.ts[i + 1]) - std::log(kp.ts[i])));
      break;
    }
  if (!std::isfinite(tstar) || kp.ts.front() > tstar / 100.0 || kp.ts.back() < tstar * 100.0)
    throw InvalidArgument("insufficient t coverage around the crossover");
  if (idx.q_infinite()) {
    double best = 0.0;
    for (std::size_t i = 0; i < kp.ts.size(); ++i) best = std::max(best, std::pow(kp.ts[i], -th) * kp.ks[i]);
    return {best, 0.0};
  }
  const double q = idx.q;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < kp.ts.size(); ++i) {
    const double f0 = std::pow(kp.ts[i], -th * q) * std::pow(kp.ks[i], q);
    const double f1 = std::pow(kp.ts[i + 1], -th * q) * std::pow(kp.ks[i + 1], q);
    integral += 0.5 * (f0 + f1) * std::log(kp.ts[i + 1] / kp.ts[i]);
  }
  const double lo = std::pow(kp.h1, q) * std::pow(kp.ts.front(), q * (1.0 - th)) / (q * (1.0 - th));
  const double hi = std::pow(kp.l2, q) * std::pow(kp.ts.back(), -th * q) / (th * q);
  const double norm_fac = q * th * (1.0 - th);
  const double total = std::pow(norm_fac * (integral + lo + hi), 1.0 / q);
  const double without = std::pow(norm_fac * integral, 1.0 / q);
  return {total, total - without};
}

double interpolation_norm(const GridFunction& u, const BesovIndex& idx, const KProfile& kp) {
  if (std::all_of(u.values.begin(), u.values.end(), [](double x) { return x == 0.0; })) return 0.0;
  return interpolation_norm(kp, idx).value;
}

RatioReport marchaud_check(const GridFunction& v, double sigma, double rho, const Restriction& where) {
  if (!(sigma > 0.0 && sigma <= 0.95 + 1e-15)) throw OutOfRange("Marchaud check needs sigma in (0, 0.95]");
  const auto sample = sample_offsets(DirectionSet::ball(rho), v.grid, false, 4);
  if (sample.empty()) throw InvalidArgument("no aligned steps fit the direction set");
  std::vector<Offset> offs;
  for (const auto& s : sample) offs.push_back(s.m);
  const Restriction r = resolve(where, v);
  const auto om1 = kernels::difference_norms(v, 1, offs, r);
  const auto om2 = kernels::difference_norms(v, 2, offs, r);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < offs.size(); ++i) {
    const double hl = std::pow(norm(v.grid.vector(offs[i])), sigma);
    s1 = std::max(s1, om1[i] / hl);
    s2 = std::max(s2, om2[i] / hl);
  }
  const double l2 = v.domain.dim() == v.grid.dim() ? l2_norm_on(v, v.domain) : l2_norm(v);
  const double rhs = l2 + s2 / std::sqrt(1.0 - sigma);
  return {"marchaud", s1, rhs, s1 == 0.0 ? 0.0 : s1 / rhs};
}

Localization localize(const GridFunction& v, const Covering& cov, const BesovIndex& idx, const DirectionSet& dirs) {
  if (!cov.covers(v.domain, dirs.radius)) throw InvalidArgument("covering does not cover the offset set");
  Localization out;
  double agg = 0.0;
  for (std::size_t j = 0; j < cov.size(); ++j) {
    const double val = dq_seminorm(v, idx, dirs, Restriction::inner(cov.ball_domain(j)));
    out.per_ball.push_back(val);
    agg += val * val;
  }
  out.aggregate = std::sqrt(agg);
  out.global = dq_seminorm(v, idx, dirs, Restriction::whole_space());
  return out;
}

std::pair<double, double> reiteration_bound(const GridFunction& v, double s, double sigma, const std::vector<Vec>& steps) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("reiteration needs s in (0, 1)");
  if (!(sigma > 0.0 && sigma <= 1.0) || !(s + sigma < 2.0)) throw InvalidArgument("reiteration needs sigma in (0, 1]");
  if (steps.empty()) throw InvalidArgument("reiteration needs at least one step");
  std::vector<Offset> offs;
  for (const auto& h : steps) offs.push_back(v.grid.offset(h));
  const auto om = kernels::difference_norms(v, 2, offs, Restriction::inner(v.domain));
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double hl = norm(v.grid.vector(offs[i]));
    lhs = std::max(lhs, om[i] / std::pow(hl, s + sigma));
    const GridFunction dv = difference(v, steps[i], 1);
    rhs = std::max(rhs, gagliardo_seminorm(dv, s, GagliardoMode::domain()) / std::pow(hl, sigma));
  }
  return {lhs, rhs};
}

double cone_identity_residual(const GridFunction& v, std::span<const double> h1, std::span<const double> h2) {
  const std::size_t d = h1.size();
  if (h2.size() != d || static_cast<int>(d) != v.grid.dim()) throw InvalidArgument("step dimension does not match the grid");
  Vec diff(d), a(d), b(d), sum(d), neg(d);
  for (std::size_t k = 0; k < d; ++k) {
    diff[k] = h1[k] - h2[k];
    neg[k] = -diff[k];
    a[k] = 2 * h1[k];
    b[k] = 2 * h2[k];
    sum[k] = h1[k] + h2[k];
  }
  const GridFunction lhs = difference(v, diff, 2);
  const GridFunction da = difference(v, a, 2), db = difference(v, b, 2);
  GridFunction w = translate(v, diff);
  const GridFunction wn = translate(v, neg);
  for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] += wn.values[i];
  const GridFunction dw = difference(w, sum, 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i)
    worst = std::max(worst, std::abs(2 * lhs.values[i] - da.values[i] - db.values[i] + dw.values[i]));
  return worst;
}

}  // namespace fraclap
