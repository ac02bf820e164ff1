#include "fraclap/kernels.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "fraclap/errors.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace detail {

namespace {

// F(z) = |z|^{3-2s} / ((3-2s)(2-2s)(1-2s)(-2s)) minus a quadratic, which the fourth
// difference ignores; written so that s = 1/2 is the smooth limit -z^2 log|z| / 2.
double fourth_antiderivative(double z, double sigma) {
  z = std::abs(z);
  if (z == 0.0) return 0.0;
  const double e = 1.0 - 2.0 * sigma;
  const double L = std::log(z);
  const double E = e == 0.0 ? L : std::expm1(e * L) / e;
  return z * z * E / ((3.0 - 2.0 * sigma) * (2.0 - 2.0 * sigma) * (-2.0 * sigma));
}

double bspline3(double t) {
  t = std::abs(t);
  if (t >= 2.0) return 0.0;
  if (t >= 1.0) return (2.0 - t) * (2.0 - t) * (2.0 - t) / 6.0;
  return (4.0 - 6.0 * t * t + 3.0 * t * t * t) / 6.0;
}

}  // namespace

double stiffness_entry(std::size_t k, double sigma) {
  const double kd = static_cast<double>(k);
  double d4 = 0.0;
  if (k <= 2) {
    static const double c[] = {1, -4, 6, -4, 1};
    for (int j = -2; j <= 2; ++j) d4 += c[j + 2] * fourth_antiderivative(kd + j, sigma);
  } else {
    // Fourth difference of F equals the B-spline average of F'''' = z^{-1-2s}.
    const auto& r = gauss_legendre(16);
    for (int piece = -2; piece < 2; ++piece) {
      const double c = piece + 0.5;
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        const double t = c + 0.5 * r.x[i];
        d4 += 0.5 * r.w[i] * bspline3(t) * std::pow(kd + t, -1.0 - 2.0 * sigma);
      }
    }
  }
  return -2.0 * d4;
}

double same_cell(double g, double spacing, double sigma) {
  return g * g * 2.0 * std::pow(spacing, 3.0 - 2.0 * sigma) / ((2.0 - 2.0 * sigma) * (3.0 - 2.0 * sigma));
}

AdjacentWeights adjacent_weights(double sigma) {
  AdjacentWeights aw{};
  aw.tri = 1.0 / (3.0 * (3.0 - 2.0 * sigma));
  const auto& r = gauss_legendre(24);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double tau = 1.5 + 0.5 * r.x[i];
    const double wt = 0.5 * r.w[i] * std::pow(tau, 2.0 - 2.0 * sigma);
    const double u1 = 1.0 / tau, u0 = 1.0 - 1.0 / tau;
    aw.q0 += wt * (u1 - u0);
    aw.q1 += wt * (u1 * u1 - u0 * u0);
    aw.q2 += wt * (u1 * u1 * u1 - u0 * u0 * u0) / 3.0;
  }
  return aw;
}

double adjacent_cells(const AdjacentWeights& aw, double g_left, double g_right, double spacing, double sigma) {
  const double a = g_right, b = g_left - g_right;
  const double inner = aw.tri * (g_left * g_left + g_left * g_right + g_right * g_right) + a * a * aw.q0 +
                       a * b * aw.q1 + b * b * aw.q2;
  return std::pow(spacing, 3.0 - 2.0 * sigma) * inner;
}

FarMoments far_moments(long m, double sigma) {
  const auto& r = gauss_legendre(12);
  FarMoments f{};
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double xi = 0.5 + 0.5 * r.x[i];
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const double eta = 0.5 + 0.5 * r.x[j];
      const double k = 0.25 * r.w[i] * r.w[j] * std::pow(md + eta - xi, -1.0 - 2.0 * sigma);
      f.m00 += k;
      f.m10 += k * xi;
      f.m01 += k * eta;
      f.m20 += k * xi * xi;
      f.m02 += k * eta * eta;
      f.m11 += k * xi * eta;
    }
  }
  return f;
}

double far_cells(const FarMoments& mom, double e, double b, double d, double spacing, double sigma) {
  const double q = e * e * mom.m00 + 2.0 * e * b * mom.m10 - 2.0 * e * d * mom.m01 + b * b * mom.m20 +
                   d * d * mom.m02 - 2.0 * b * d * mom.m11;
  return std::pow(spacing, 1.0 - 2.0 * sigma) * q;
}

std::vector<double> cell_mass(int d, double spacing) {
  const std::size_t nc = std::size_t{1} << d;
  std::vector<double> m(nc * nc);
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) {
      double w = 1.0;
      for (int k = 0; k < d; ++k) w *= (spacing / 6.0) * ((((a ^ b) >> k) & 1u) ? 1.0 : 2.0);
      m[a * nc + b] = w;
    }
  return m;
}

}  // namespace detail

namespace {

double one_difference_norm(const GridFunction& v, int order, const Offset& m, const Restriction& where,
                           const std::vector<double>& mass) {
  const Grid& g = v.grid;
  const int d = g.dim();
  std::array<long, 3> N{1, 1, 1}, ext{0, 0, 0}, n{1, 1, 1}, mm{0, 0, 0};
  double hlen2 = 0.0;
  for (int k = 0; k < d; ++k) {
    N[k] = static_cast<long>(g.shape[k]);
    mm[k] = m[k];
    if (where.kind == Restriction::Kind::whole_space) ext[k] = std::labs(m[k]);
    n[k] = N[k] + 2 * ext[k];
    hlen2 += static_cast<double>(m[k]) * static_cast<double>(m[k]);
  }
  const double lambda = g.spacing * std::sqrt(hlen2);
  const auto get = [&](long i0, long i1, long i2) -> double {
    if (i0 < 0 || i0 >= N[0] || i1 < 0 || i1 >= N[1] || i2 < 0 || i2 >= N[2]) return 0.0;
    return v.values[static_cast<std::size_t>((i0 * N[1] + i1) * N[2] + i2)];
  };
  const std::size_t total = static_cast<std::size_t>(n[0] * n[1] * n[2]);
  std::vector<double> w(total);
  std::vector<char> keep(total, 1);
  Vec x(static_cast<std::size_t>(d));
  for (long a = 0; a < n[0]; ++a)
    for (long b = 0; b < n[1]; ++b)
      for (long c = 0; c < n[2]; ++c) {
        const long i0 = a - ext[0], i1 = b - ext[1], i2 = c - ext[2];
        const std::size_t f = static_cast<std::size_t>((a * n[1] + b) * n[2] + c);
        const double vp = get(i0 + mm[0], i1 + mm[1], i2 + mm[2]);
        const double v0 = get(i0, i1, i2);
        if (order == 1) {
          w[f] = vp - v0;
        } else {
          const double vm = get(i0 - mm[0], i1 - mm[1], i2 - mm[2]);
          w[f] = (vp + vm) - 2.0 * v0;
        }
        if (where.kind == Restriction::Kind::inner) {
          const long idx[3] = {i0, i1, i2};
          for (int k = 0; k < d; ++k) x[k] = g.origin[k] + g.spacing * static_cast<double>(idx[k]);
          keep[f] = where.keeps(x, lambda, g.spacing);
        }
      }
  const std::size_t nc = std::size_t{1} << d;
  std::array<long, 3> cells{1, 1, 1};
  for (int k = 0; k < d; ++k) cells[k] = n[k] - 1;
  double sum = 0.0;
  double cw[8];
  for (long a = 0; a < cells[0]; ++a)
    for (long b = 0; b < cells[1]; ++b)
      for (long c = 0; c < cells[2]; ++c) {
        bool all = true;
        bool any = false;
        for (std::size_t j = 0; j < nc; ++j) {
          const long ca = a + static_cast<long>(j & 1u);
          const long cb = b + static_cast<long>((j >> 1) & 1u);
          const long cc = c + static_cast<long>((j >> 2) & 1u);
          const std::size_t f = static_cast<std::size_t>((ca * n[1] + cb) * n[2] + cc);
          if (!keep[f]) {
            all = false;
            break;
          }
          cw[j] = w[f];
          any = any || cw[j] != 0.0;
        }
        if (!all || !any) continue;
        for (std::size_t p = 0; p < nc; ++p)
          for (std::size_t q = 0; q < nc; ++q) sum += mass[p * nc + q] * cw[p] * cw[q];
      }
  return std::sqrt(std::max(sum, 0.0));
}

}  // namespace

namespace kernels {

std::vector<double> difference_norms(const GridFunction& v, int order, const std::vector<Offset>& offsets,
                                     const Restriction& where) {
  if (order != 1 && order != 2) throw InvalidArgument("difference order must be 1 or 2");
  const auto mass = detail::cell_mass(v.grid.dim(), v.grid.spacing);
  std::vector<double> out(offsets.size());
  const long ns = static_cast<long>(offsets.size());
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < ns; ++s)
    out[static_cast<std::size_t>(s)] =
        one_difference_norm(v, order, offsets[static_cast<std::size_t>(s)], where, mass);
  return out;
}

std::vector<double> stiffness_profile(std::size_t kmax, double sigma) {
  std::vector<double> out(kmax + 1);
  const long n = static_cast<long>(kmax) + 1;
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = detail::stiffness_entry(static_cast<std::size_t>(k), sigma);
  return out;
}

double toeplitz_quadratic(const std::vector<double>& w, const std::vector<double>& t) {
  const long n = static_cast<long>(w.size());
  if (t.size() < w.size()) throw InvalidArgument("Toeplitz profile shorter than the vector");
  std::vector<double> lag(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < n; ++k) {
    double s = 0.0;
    for (long i = 0; i + k < n; ++i) s += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i + k)];
    lag[static_cast<std::size_t>(k)] = s;
  }
  double total = 0.0;
  for (long k = 0; k < n; ++k) total += (k == 0 ? 1.0 : 2.0) * t[static_cast<std::size_t>(k)] * lag[static_cast<std::size_t>(k)];
  return total;
}

double cell_pair_sum(const CellPairInput& in) {
  const auto& w = *in.w;
  const long nc = static_cast<long>(w.size()) - 1;
  if (nc < 1) return 0.0;
  const double dx = in.spacing, sg = in.sigma;
  std::vector<double> g(static_cast<std::size_t>(nc));
  for (long k = 0; k < nc; ++k) g[static_cast<std::size_t>(k)] = (w[static_cast<std::size_t>(k + 1)] - w[static_cast<std::size_t>(k)]) / dx;
  const auto aw = detail::adjacent_weights(sg);
  const auto X = [&](long k) { return in.x_cells[static_cast<std::size_t>(k)] != 0; };
  const auto Y = [&](long k) { return in.y_cells[static_cast<std::size_t>(k)] != 0; };
  std::vector<double> partial(static_cast<std::size_t>(nc), 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (long m = 0; m < nc; ++m) {
    double s = 0.0;
    if (m == 0) {
      for (long k = 0; k < nc; ++k)
        if (X(k) && Y(k)) s += detail::same_cell(g[static_cast<std::size_t>(k)], dx, sg);
    } else if (m == 1) {
      for (long k = 0; k + 1 < nc; ++k) {
        const int cnt = (X(k) && Y(k + 1)) + (X(k + 1) && Y(k));
        if (cnt) s += cnt * detail::adjacent_cells(aw, g[static_cast<std::size_t>(k)], g[static_cast<std::size_t>(k + 1)], dx, sg);
      }
    } else {
      const auto mom = detail::far_moments(m, sg);
      for (long k = 0; k + m < nc; ++k) {
        const long l = k + m;
        const int cnt = (X(k) && Y(l)) + (X(l) && Y(k));
        if (!cnt) continue;
        const std::size_t ku = static_cast<std::size_t>(k), lu = static_cast<std::size_t>(l);
        s += cnt * detail::far_cells(mom, w[ku] - w[lu], w[ku + 1] - w[ku], w[lu + 1] - w[lu], dx, sg);
      }
    }
    partial[static_cast<std::size_t>(m)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace kernels

}  // namespace fraclap
