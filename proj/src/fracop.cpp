#include "fraclap/fracop.hpp"

#include <cmath>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {

constexpr double kSMin = 0.05, kSMax = 0.95;

void check_order(double s) {
  if (!(s >= kSMin - 1e-15 && s <= kSMax + 1e-15))
    throw OutOfRange("fractional order must lie in [0.05, 0.95]");
}

}  // namespace

double normalization_constant(int d, double s) {
  check_order(s);
  if (d < 1) throw InvalidArgument("dimension must be >= 1");
  const double hd = 0.5 * d;
  const double lg = 2.0 * s * std::log(2.0) + std::log(s) + std::lgamma(s + hd) - hd * std::log(std::numbers::pi) -
                    std::lgamma(1.0 - s);
  return std::exp(lg);
}

FracParams::FracParams(double s_, int d_) : s(s_), d(d_), c_ds(normalization_constant(d_, s_)) {}

double FracParams::constant() const {
  const double c = normalization_constant(d, s);
  if (std::abs(c - c_ds) > 1e-12 * c) throw InvalidArgument("cached normalization constant is stale");
  return c;
}

Descriptor getoor_solution(int d, double s, double r) { return Descriptor::getoor(d, s, r); }

namespace {

struct RayResult {
  double value;
  double near_err;
};

// J(w) = int_0^inf (2 f(x) - f(x + t w) - f(x - t w)) t^{-1-2s} dt.
RayResult ray_integral(const Descriptor& fn, std::span<const double> x, std::span<const double> w, double s,
                       double fx, double tol, std::size_t npts) {
  const std::size_t d = x.size();
  Vec yp(d), ym(d);
  const auto g = [&](double t) {
    for (std::size_t k = 0; k < d; ++k) {
      yp[k] = x[k] + t * w[k];
      ym[k] = x[k] - t * w[k];
    }
    return 2.0 * fx - fn(yp) - fn(ym);
  };
  const auto breaks = fn.line_breaks(x, w);
  if (breaks.empty()) {
    // Line misses the support: g is constant 2 f(x), which then is 0.
    return {0.0, 0.0};
  }
  const double t1 = breaks.front();
  const double tail_from = breaks.back();

  // Near field: g(t) ~ a t^2 + b t^4, fitted from g(eps) and g(eps/2).
  double eps = 1e-3 * t1;
  double near = 0.0, near_err = 0.0;
  for (int attempt = 0; attempt < 30; ++attempt) {
    const double g1 = g(eps), g2 = g(0.5 * eps);
    const double b = 4.0 * (g1 - 4.0 * g2) / (3.0 * std::pow(eps, 4));
    const double a = (g1 - b * std::pow(eps, 4)) / (eps * eps);
    const double bterm = b * std::pow(eps, 4.0 - 2.0 * s) / (4.0 - 2.0 * s);
    near = a * std::pow(eps, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) + bterm;
    near_err = std::abs(bterm) * (eps / t1) * (eps / t1) + 1e-16 * std::abs(near);
    if (near_err <= 0.5 * tol) break;
    eps *= 0.25;
  }
  const auto integrand = [&](double t) { return g(t) * std::pow(t, -1.0 - 2.0 * s); };
  double total = near;
  double lo = eps;
  for (double b : breaks) {
    if (b <= lo) continue;
    total += graded_gauss(integrand, lo, b, npts);
    lo = b;
  }
  total += 2.0 * fx * std::pow(tail_from, -2.0 * s) / (2.0 * s);
  return {total, near_err};
}

}  // namespace

PointValue apply_pointwise(const Descriptor& fn, std::span<const double> x, const FracParams& params, double tol) {
  if (!(tol >= 1e-10 * (1 - 1e-12) && tol <= 1e-3 * (1 + 1e-12)))
    throw InvalidArgument("tolerance must lie in [1e-10, 1e-3]");
  const int d = params.d;
  if (static_cast<int>(x.size()) != d) throw InvalidArgument("point dimension does not match parameters");
  if (fn.dim() && fn.dim() != d) throw InvalidArgument("descriptor dimension does not match parameters");
  if (fn.family() == Descriptor::Family::constant) return {0.0, 0.0};
  if (!fn.compact())
    throw InvalidArgument(fn.name() + ": not evaluable (needs a C^2 function with compact support)");
  const double C = params.constant();
  const double s = params.s;
  const double fx = fn(x);
  const double rtol = tol / C;
  constexpr std::size_t kPts = 14;

  if (d == 1) {
    const Vec w{1.0};
    const auto r = ray_integral(fn, x, w, s, fx, rtol, kPts);
    const auto r2 = ray_integral(fn, x, w, s, fx, rtol, 24);
    return {C * r2.value, C * (std::abs(r2.value - r.value) + r.near_err)};
  }

  // Radial accuracy probe on one ray.
  Vec w0(static_cast<std::size_t>(d), 0.0);
  w0[0] = 1.0;
  const auto ra = ray_integral(fn, x, w0, s, fx, rtol, kPts);
  const auto rb = ray_integral(fn, x, w0, s, fx, rtol, 24);
  const double radial_err = std::abs(ra.value - rb.value) + ra.near_err;

  if (d == 2) {
    // Periodic trapezoid on phi in [0, pi) (J has period pi).
    std::vector<double> vals;
    const auto J = [&](double phi) {
      const Vec w{std::cos(phi), std::sin(phi)};
      return ray_integral(fn, x, w, s, fx, rtol, kPts).value;
    };
    std::size_t n = 8;
    for (std::size_t k = 0; k < n; ++k) vals.push_back(J(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
    double sum = 0.0;
    for (double v : vals) sum += v;
    double prev = std::numbers::pi * sum / static_cast<double>(n);
    while (true) {
      // Refine: new points are the odd multiples of pi / (2n).
      double add = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        add += J(std::numbers::pi * (2.0 * static_cast<double>(k) + 1.0) / (2.0 * static_cast<double>(n)));
      sum += add;
      n *= 2;
      const double cur = std::numbers::pi * sum / static_cast<double>(n);
      const double err = std::abs(cur - prev);
      if (err <= 0.25 * rtol)
        return {C * cur, C * (err + radial_err * std::numbers::pi)};
      if (n > 4096) throw ConvergenceError("angular quadrature did not converge");
      prev = cur;
    }
  }

  // d = 3: Gauss-Legendre in cos(theta) times trapezoid in phi.
  if (d != 3) throw InvalidArgument("pointwise evaluation supports d <= 3");
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = 8; n <= 256; n *= 2) {
    const auto& r = gauss_legendre(n);
    const std::size_t nphi = 2 * n;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mu = r.x[i];
      const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      double inner = 0.0;
      for (std::size_t j = 0; j < nphi; ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nphi);
        const Vec w{st * std::cos(phi), st * std::sin(phi), mu};
        inner += ray_integral(fn, x, w, s, fx, rtol, kPts).value;
      }
      sum += r.w[i] * inner * 2.0 * std::numbers::pi / static_cast<double>(nphi);
    }
    const double cur = 0.5 * sum;
    if (std::isfinite(prev) && std::abs(cur - prev) <= 0.25 * rtol)
      return {C * cur, C * (std::abs(cur - prev) + radial_err * 2.0 * std::numbers::pi)};
    prev = cur;
  }
  throw ConvergenceError("spherical quadrature did not converge");
}

// ---------------------------------------------------------------------------
// Seminorms of the piecewise linear interpolant in d = 1.

namespace {

void require_1d(const GridFunction& v) {
  if (v.grid.dim() != 1) throw InvalidArgument("fractional seminorms are implemented for d = 1");
  if (v.grid.shape[0] < 3) throw InvalidArgument("seminorm needs at least 3 nodes");
}

// int_{y0}^{y1} y^alpha dy, y0 >= 0.
double powint(double y0, double y1, double alpha) {
  const double e = alpha + 1.0;
  if (y0 == 0.0) {
    if (!(e > 0)) throw InvalidArgument("divergent endpoint integral");
    return std::pow(y1, e) / e;
  }
  const double L = std::log(y1 / y0);
  if (e == 0.0) return L;
  return std::pow(y0, e) * std::expm1(e * L) / e;
}

// sum over selected cells of int w(x)^2 |x - e|^{-2 sigma} dx / (2 sigma); all selected
// cells lie on the side dir of e (dir = +1: x >= e).
double endpoint_tail(const std::vector<double>& w, double x0, double dx, double sigma, double e, int dir,
                     const std::vector<char>& cells) {
  const auto& gr = gauss_legendre(8);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (!cells[k]) continue;
    const double xa = x0 + dx * static_cast<double>(k), xb = xa + dx;
    double ya = dir * (xa - e), yb = dir * (xb - e);
    double wa = w[k], wb = w[k + 1];
    if (ya > yb) {
      std::swap(ya, yb);
      std::swap(wa, wb);
    }
    if (ya < -1e-9 * dx) throw InvalidArgument("tail cell on the wrong side of the endpoint");
    ya = std::max(ya, 0.0);
    if (wa == 0.0 && wb == 0.0) continue;
    double val = 0.0;
    if (ya < 2.0 * dx) {
      const double q = (wb - wa) / (yb - ya);
      const double p = wa - q * ya;
      if (ya == 0.0 && p != 0.0 && 2.0 * sigma >= 1.0)
        throw InvalidArgument("function does not vanish at the end of its support");
      if (p != 0.0) val += p * p * powint(ya, yb, -2.0 * sigma);
      val += 2.0 * p * q * powint(ya, yb, 1.0 - 2.0 * sigma) + q * q * powint(ya, yb, 2.0 - 2.0 * sigma);
    } else {
      const double c = 0.5 * (ya + yb), h = 0.5 * (yb - ya);
      for (std::size_t i = 0; i < gr.x.size(); ++i) {
        const double t = 0.5 * (1.0 + gr.x[i]);
        const double wv = wa + t * (wb - wa);
        val += gr.w[i] * h * wv * wv * std::pow(c + h * gr.x[i], -2.0 * sigma);
      }
    }
    total += val;
  }
  return total / (2.0 * sigma);
}

void require_vanishing(const GridFunction& v) {
  const auto& w = v.values;
  if (std::abs(w.front()) > 1e-14 || std::abs(w.back()) > 1e-14)
    throw InvalidArgument("function must vanish at both ends of the grid");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) <= 1e-14) continue;
    const Vec x = v.grid.point(i);
    if (!v.domain.contains_closed(x, 1e-9 * v.grid.spacing))
      throw InvalidArgument("function is not zero-extended outside its domain");
  }
}

long snap(double x, double x0, double dx, long nodes) {
  const long i = std::lround((x - x0) / dx);
  return std::clamp(i, 0L, nodes - 1);
}

}  // namespace

double gagliardo_seminorm(const GridFunction& v, double sigma, const GagliardoMode& mode) {
  check_order(sigma);
  require_1d(v);
  const auto& w = v.values;
  const double dx = v.grid.spacing, x0 = v.grid.origin[0];
  const long nodes = static_cast<long>(w.size());
  const std::size_t ncell = w.size() - 1;
  const double C = normalization_constant(1, sigma);

  switch (mode.kind) {
    case GagliardoMode::Kind::full: {
      require_vanishing(v);
      const auto prof = kernels::stiffness_profile(w.size() - 1, sigma);
      const double q = kernels::toeplitz_quadratic(w, prof) * std::pow(dx, 1.0 - 2.0 * sigma);
      return std::sqrt(std::max(0.0, 0.5 * C * q));
    }
    case GagliardoMode::Kind::domain: {
      if (v.domain.kind() != Domain::Kind::interval_union) throw InvalidArgument("domain mode needs intervals");
      std::vector<char> cells(ncell, 0);
      for (const auto& iv : v.domain.pieces()) {
        const long a = snap(iv.a, x0, dx, nodes), b = snap(iv.b, x0, dx, nodes);
        for (long k = a; k < b; ++k) cells[static_cast<std::size_t>(k)] = 1;
      }
      CellPairInput in{&w, dx, sigma, cells, cells};
      return std::sqrt(std::max(0.0, 0.5 * C * kernels::cell_pair_sum(in)));
    }
    case GagliardoMode::Kind::semi_local: {
      if (mode.center.size() != 1 || !(mode.radius > 0)) throw InvalidArgument("semi-local mode needs a 1D ball");
      require_vanishing(v);
      const double L = x0, R = x0 + dx * static_cast<double>(ncell);
      const double al = mode.center[0] - mode.radius, be = mode.center[0] + mode.radius;
      std::vector<char> xc(ncell, 0), all(ncell, 1);
      if (be > L && al < R) {
        const long a = snap(std::max(al, L), x0, dx, nodes), b = snap(std::min(be, R), x0, dx, nodes);
        for (long k = a; k < b; ++k) xc[static_cast<std::size_t>(k)] = 1;
      }
      CellPairInput in{&w, dx, sigma, xc, all};
      double q = kernels::cell_pair_sum(in);
      q += endpoint_tail(w, x0, dx, sigma, L, +1, xc) + endpoint_tail(w, x0, dx, sigma, R, -1, xc);
      if (al < L)
        q += endpoint_tail(w, x0, dx, sigma, L, +1, all) - endpoint_tail(w, x0, dx, sigma, std::min(al, L), +1, all);
      if (be > R)
        q += endpoint_tail(w, x0, dx, sigma, R, -1, all) - endpoint_tail(w, x0, dx, sigma, std::max(be, R), -1, all);
      return std::sqrt(std::max(0.0, q));
    }
  }
  return 0.0;
}

double gagliardo_full_cellpair(const GridFunction& v, double sigma) {
  check_order(sigma);
  require_1d(v);
  require_vanishing(v);
  const auto& w = v.values;
  const double dx = v.grid.spacing, x0 = v.grid.origin[0];
  const std::size_t ncell = w.size() - 1;
  std::vector<char> all(ncell, 1);
  CellPairInput in{&w, dx, sigma, all, all};
  const double L = x0, R = x0 + dx * static_cast<double>(ncell);
  const double q = kernels::cell_pair_sum(in) +
                   2.0 * (endpoint_tail(w, x0, dx, sigma, L, +1, all) + endpoint_tail(w, x0, dx, sigma, R, -1, all));
  return std::sqrt(std::max(0.0, 0.5 * normalization_constant(1, sigma) * q));
}

double derivative_seminorm(const GridFunction& v, double tau) {
  if (!(tau > 0.0 && tau < 0.5)) throw OutOfRange("derivative seminorm needs tau in (0, 1/2)");
  require_1d(v);
  if (v.domain.kind() != Domain::Kind::interval_union) throw InvalidArgument("derivative seminorm needs intervals");
  const auto& w = v.values;
  const double dx = v.grid.spacing, x0 = v.grid.origin[0];
  const long nodes = static_cast<long>(w.size());
  std::vector<long> cells;
  for (const auto& iv : v.domain.pieces()) {
    const long a = snap(iv.a, x0, dx, nodes), b = snap(iv.b, x0, dx, nodes);
    for (long k = a; k < b; ++k) cells.push_back(k);
  }
  std::vector<double> g(static_cast<std::size_t>(nodes - 1));
  for (long k = 0; k + 1 < nodes; ++k) g[static_cast<std::size_t>(k)] = (w[static_cast<std::size_t>(k + 1)] - w[static_cast<std::size_t>(k)]) / dx;
  // Cell-pair kernel weight for lag m: int_0^1 int_0^1 (m + eta - xi)^{-1-2 tau}.
  const double e = 1.0 - 2.0 * tau;
  const auto G = [&](double z) { return z == 0.0 ? 0.0 : std::pow(z, e) / (e * (-2.0 * tau)); };
  const auto& gr = gauss_legendre(16);
  const auto weight = [&](long m) {
    const double md = static_cast<double>(m);
    if (m <= 2) return G(md + 1) - 2.0 * G(md) + G(md - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < gr.x.size(); ++i)
      for (int side : {-1, 1}) {
        const double t = side * 0.5 * (1.0 + gr.x[i]);
        s += 0.5 * gr.w[i] * (1.0 - std::abs(t)) * std::pow(md + t, -1.0 - 2.0 * tau);
      }
    return s;
  };
  const long nc = static_cast<long>(g.size());
  std::vector<double> wt(static_cast<std::size_t>(nc), 0.0);
  for (long m = 1; m < nc; ++m) wt[static_cast<std::size_t>(m)] = weight(m);
  double sum = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const long m = std::labs(cells[j] - cells[i]);
      const double dg = g[static_cast<std::size_t>(cells[i])] - g[static_cast<std::size_t>(cells[j])];
      sum += 2.0 * dg * dg * wt[static_cast<std::size_t>(m)];
    }
  sum *= std::pow(dx, 1.0 - 2.0 * tau);
  return std::sqrt(std::max(0.0, 0.5 * normalization_constant(1, tau) * sum));
}

}  // namespace fraclap
