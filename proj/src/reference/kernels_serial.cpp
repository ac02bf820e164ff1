// Serial counterparts of the OpenMP kernels, written along the direct route
// (explicit padding and translation). Used by the tests and the benchmark.
#include <cmath>
#include <cstdlib>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"

namespace fraclap::reference {

namespace {

GridFunction pad(const GridFunction& v, const std::vector<long>& by) {
  const Grid& g = v.grid;
  Grid big = g;
  for (int k = 0; k < g.dim(); ++k) {
    big.origin[k] -= g.spacing * static_cast<double>(by[k]);
    big.shape[k] += 2 * static_cast<std::size_t>(by[k]);
  }
  GridFunction out{big, std::vector<double>(big.size(), 0.0), v.domain, v.meta};
  std::vector<long> idx(static_cast<std::size_t>(g.dim()));
  for (std::size_t f = 0; f < g.size(); ++f) {
    std::size_t rem = f;
    for (int k = g.dim() - 1; k >= 0; --k) {
      idx[k] = static_cast<long>(rem % g.shape[k]) + by[k];
      rem /= g.shape[k];
    }
    out.values[big.flat(idx)] = v.values[f];
  }
  return out;
}

}  // namespace

std::vector<double> difference_norms(const GridFunction& v, int order, const std::vector<Offset>& offsets,
                                     const Restriction& where) {
  if (order != 1 && order != 2) throw InvalidArgument("difference order must be 1 or 2");
  std::vector<double> out;
  for (const auto& m : offsets) {
    std::vector<long> by(m.size(), 0);
    if (where.kind == Restriction::Kind::whole_space)
      for (std::size_t k = 0; k < m.size(); ++k) by[k] = std::labs(m[k]);
    const GridFunction p = pad(v, by);
    const Vec h = v.grid.vector(m);
    const GridFunction w = difference(p, h, order);
    out.push_back(l2_norm(w, where, norm(h)));
  }
  return out;
}

std::vector<double> stiffness_profile(std::size_t kmax, double sigma) {
  std::vector<double> out;
  for (std::size_t k = 0; k <= kmax; ++k) out.push_back(detail::stiffness_entry(k, sigma));
  return out;
}

double toeplitz_quadratic(const std::vector<double>& w, const std::vector<double>& t) {
  if (t.size() < w.size()) throw InvalidArgument("Toeplitz profile shorter than the vector");
  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i + k < w.size(); ++i) s += w[i] * w[i + k];
    total += (k == 0 ? 1.0 : 2.0) * t[k] * s;
  }
  return total;
}

double cell_pair_sum(const CellPairInput& in) {
  const auto& w = *in.w;
  const std::size_t nc = w.size() - 1;
  const double dx = in.spacing, sg = in.sigma;
  const auto aw = detail::adjacent_weights(sg);
  double total = 0.0;
  for (std::size_t m = 0; m < nc; ++m) {
    double s = 0.0;
    const auto mom = m >= 2 ? detail::far_moments(static_cast<long>(m), sg) : detail::FarMoments{};
    for (std::size_t k = 0; k + m < nc; ++k) {
      const std::size_t l = k + m;
      const int cnt = m == 0 ? (in.x_cells[k] && in.y_cells[k])
                             : (in.x_cells[k] && in.y_cells[l]) + (in.x_cells[l] && in.y_cells[k]);
      if (!cnt) continue;
      const double gk = (w[k + 1] - w[k]) / dx, gl = (w[l + 1] - w[l]) / dx;
      if (m == 0)
        s += detail::same_cell(gk, dx, sg);
      else if (m == 1)
        s += cnt * detail::adjacent_cells(aw, gk, gl, dx, sg);
      else
        s += cnt * detail::far_cells(mom, w[k] - w[l], w[k + 1] - w[k], w[l + 1] - w[l], dx, sg);
    }
    total += s;
  }
  return total;
}

}  // namespace fraclap::reference
