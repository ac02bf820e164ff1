#include "fraclap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

GaussRule build_rule(std::size_t n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidArgument("Gauss rule needs at least one node");
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double gauss(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const auto& r = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

double graded_gauss(const std::function<double(double)>& f, double a, double b, std::size_t n, int levels,
                    double q) {
  if (!(b > a)) return 0.0;
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  // Left half: [a + L q^{k+1}, a + L q^k], then the innermost piece.
  const double L = mid - a;
  double hi = L;
  for (int k = 0; k < levels; ++k) {
    const double lo = hi * q;
    s += gauss(f, a + lo, a + hi, n);
    s += gauss(f, b - hi, b - lo, n);
    hi = lo;
  }
  s += gauss(f, a, a + hi, n);
  s += gauss(f, b - hi, b, n);
  return s;
}

}  // namespace fraclap
