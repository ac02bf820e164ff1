#include "fraclap/grid.hpp"

#include <cmath>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"

namespace fraclap {

Grid::Grid(Vec o, double h, std::vector<std::size_t> s) : origin(std::move(o)), spacing(h), shape(std::move(s)) {
  if (shape.empty() || shape.size() > 3) throw InvalidArgument("grid dimension must be 1, 2 or 3");
  if (origin.size() != shape.size()) throw InvalidArgument("grid origin and shape disagree in dimension");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidArgument("grid spacing must be positive");
  for (auto n : shape)
    if (n < 2) throw InvalidArgument("grid needs at least 2 points per axis");
}

Grid Grid::box(const Vec& lo, double length, std::size_t n) {
  if (n < 1) throw InvalidArgument("grid needs at least one cell");
  return Grid(lo, length / static_cast<double>(n), std::vector<std::size_t>(lo.size(), n + 1));
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

Vec Grid::point(std::size_t f) const {
  Vec x(shape.size());
  for (int k = dim() - 1; k >= 0; --k) {
    x[k] = origin[k] + spacing * static_cast<double>(f % shape[k]);
    f /= shape[k];
  }
  return x;
}

std::size_t Grid::flat(std::span<const long> idx) const {
  std::size_t f = 0;
  for (int k = 0; k < dim(); ++k) f = f * shape[k] + static_cast<std::size_t>(idx[k]);
  return f;
}

double Grid::cell_volume() const { return std::pow(spacing, dim()); }

Offset Grid::offset(std::span<const double> h) const {
  if (static_cast<int>(h.size()) != dim()) throw InvalidArgument("step dimension does not match grid");
  Offset m(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double r = h[k] / spacing;
    const double n = std::round(r);
    if (std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(n)))
      throw InvalidArgument("step is not a multiple of the grid spacing");
    m[k] = static_cast<long>(n);
  }
  return m;
}

Vec Grid::vector(const Offset& m) const {
  Vec h(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) h[k] = spacing * static_cast<double>(m[k]);
  return h;
}

GridFunction sample_fn(const std::function<double(std::span<const double>)>& fn, const Grid& grid,
                    const Domain& dom, bool zero_extend, std::string source) {
  if (dom.dim() != grid.dim()) throw InvalidArgument("domain and grid dimensions differ");
  GridFunction out{grid, std::vector<double>(grid.size()), dom, Meta{std::nullopt, std::move(source), zero_extend}};
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Vec x = grid.point(f);
    double v = (zero_extend && !dom.contains_closed(x, 1e-12 * grid.spacing)) ? 0.0 : fn(x);
    if (!std::isfinite(v)) throw InvalidArgument("sampled function produced a non-finite value");
    out.values[f] = v;
  }
  return out;
}

GridFunction sample(const Descriptor& fn, const Grid& grid, const Domain& dom, std::optional<bool> zero_extend) {
  auto out = sample_fn([&](std::span<const double> x) { return fn(x); }, grid, dom,
                    zero_extend.value_or(fn.zero_extended()), fn.name());
  if (fn.family() == Descriptor::Family::getoor) out.meta.s = fn.params()[1];
  return out;
}

namespace {

void shifted(const GridFunction& v, const Offset& m, double sign, std::vector<double>& out) {
  const Grid& g = v.grid;
  const int d = g.dim();
  out.assign(g.size(), 0.0);
  std::vector<long> idx(static_cast<std::size_t>(d));
  for (std::size_t f = 0; f < g.size(); ++f) {
    std::size_t rem = f;
    bool inside = true;
    for (int k = d - 1; k >= 0; --k) {
      const long i = static_cast<long>(rem % g.shape[k]) + static_cast<long>(sign) * m[k];
      rem /= g.shape[k];
      if (i < 0 || i >= static_cast<long>(g.shape[k])) inside = false;
      idx[k] = i;
    }
    if (inside) out[f] = v.values[g.flat(idx)];
  }
}

}  // namespace

GridFunction translate(const GridFunction& v, std::span<const double> h) {
  const Offset m = v.grid.offset(h);
  GridFunction out = v;
  shifted(v, m, 1.0, out.values);
  return out;
}

GridFunction difference(const GridFunction& v, std::span<const double> h, int order) {
  if (order != 1 && order != 2) throw InvalidArgument("difference order must be 1 or 2");
  if (order == 2)
    for (auto n : v.grid.shape)
      if (n < 4) throw InvalidArgument("second differences need at least 4 points per axis");
  const Offset m = v.grid.offset(h);
  GridFunction out = v;
  std::vector<double> plus, minus;
  shifted(v, m, 1.0, plus);
  if (order == 1) {
    for (std::size_t f = 0; f < plus.size(); ++f) out.values[f] = plus[f] - v.values[f];
  } else {
    shifted(v, m, -1.0, minus);
    for (std::size_t f = 0; f < plus.size(); ++f) out.values[f] = (plus[f] + minus[f]) - 2.0 * v.values[f];
  }
  out.meta.source = "difference";
  return out;
}

bool Restriction::keeps(std::span<const double> x, double lambda, double spacing) const {
  if (kind == Kind::whole_space) return true;
  for (const auto& d : sets)
    if (!d.contains(x) || !(d.boundary_distance(x) > lambda + 1e-9 * spacing)) return false;
  return true;
}

std::string Restriction::tag() const { return kind == Kind::whole_space ? "R^d" : "Omega_h"; }

namespace {

template <class Keep>
double masked_l2(const GridFunction& v, Keep keep) {
  const Grid& g = v.grid;
  const int d = g.dim();
  const auto mass = detail::cell_mass(d, g.spacing);
  std::vector<char> kept(g.size());
  for (std::size_t f = 0; f < g.size(); ++f) kept[f] = keep(g.point(f));
  const std::size_t nc = std::size_t{1} << d;
  std::vector<long> cells(static_cast<std::size_t>(d));
  std::size_t ncells = 1;
  for (int k = 0; k < d; ++k) {
    cells[k] = static_cast<long>(g.shape[k]) - 1;
    ncells *= static_cast<std::size_t>(cells[k]);
  }
  std::vector<long> base(static_cast<std::size_t>(d)), corner(static_cast<std::size_t>(d));
  double sum = 0.0;
  double cw[8];
  for (std::size_t c = 0; c < ncells; ++c) {
    std::size_t rem = c;
    for (int k = d - 1; k >= 0; --k) {
      base[k] = static_cast<long>(rem % static_cast<std::size_t>(cells[k]));
      rem /= static_cast<std::size_t>(cells[k]);
    }
    bool all = true;
    for (std::size_t j = 0; j < nc && all; ++j) {
      for (int k = 0; k < d; ++k) corner[k] = base[k] + static_cast<long>((j >> k) & 1u);
      const std::size_t f = g.flat(corner);
      all = kept[f] != 0;
      cw[j] = v.values[f];
    }
    if (!all) continue;
    for (std::size_t p = 0; p < nc; ++p)
      for (std::size_t q = 0; q < nc; ++q) sum += mass[p * nc + q] * cw[p] * cw[q];
  }
  return std::sqrt(std::max(sum, 0.0));
}

}  // namespace

double l2_norm(const GridFunction& v, const Restriction& where, double lambda) {
  return masked_l2(v, [&](const Vec& x) { return where.keeps(x, lambda, v.grid.spacing); });
}

double l2_norm_on(const GridFunction& v, const Domain& dom) {
  return masked_l2(v, [&](const Vec& x) { return dom.contains_closed(x, 1e-9 * v.grid.spacing); });
}

Cutoff::Cutoff(Vec center, double rho) : center_(std::move(center)), rho_(rho) {
  if (center_.empty()) throw InvalidArgument("cutoff center must have dimension >= 1");
  if (!(rho_ > 0.0)) throw InvalidArgument("cutoff radius must be positive");
}

double Cutoff::operator()(std::span<const double> x) const {
  double r2 = 0.0;
  for (std::size_t k = 0; k < center_.size(); ++k) r2 += (x[k] - center_[k]) * (x[k] - center_[k]);
  const double r = std::sqrt(r2);
  if (r <= rho_) return 1.0;
  if (r >= 2.0 * rho_) return 0.0;
  const double t = (r - rho_) / rho_;
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

GridFunction localized_translate(const GridFunction& v, const Cutoff& cut, std::span<const double> h) {
  const GridFunction vh = translate(v, h);
  GridFunction out = v;
  for (std::size_t f = 0; f < v.values.size(); ++f) {
    const double phi = cut(v.grid.point(f));
    out.values[f] = v.values[f] + phi * (vh.values[f] - v.values[f]);
  }
  out.meta.source = "localized_translate";
  return out;
}

ModulusProfile modulus(const GridFunction& v, int order, const std::vector<Vec>& steps, const Restriction& restrict) {
  if (steps.empty()) throw InvalidArgument("modulus needs at least one step");
  if (order != 1 && order != 2) throw InvalidArgument("modulus order must be 1 or 2");
  if (order == 2)
    for (auto n : v.grid.shape)
      if (n < 4) throw InvalidArgument("second differences need at least 4 points per axis");
  std::vector<Offset> offs;
  for (const auto& h : steps) offs.push_back(v.grid.offset(h));
  const auto om = kernels::difference_norms(v, order, offs, restrict);
  ModulusProfile prof;
  prof.order = order;
  for (std::size_t i = 0; i < steps.size(); ++i)
    prof.rows.push_back({norm(v.grid.vector(offs[i])), v.grid.vector(offs[i]), om[i], restrict.tag()});
  return prof;
}

std::vector<Vec> dyadic_steps(const Grid& grid, double h_max, long min_cells) {
  std::vector<Vec> out;
  for (long m = min_cells; static_cast<double>(m) * grid.spacing <= h_max * (1 + 1e-12); m *= 2) {
    Vec h(static_cast<std::size_t>(grid.dim()), 0.0);
    h[0] = static_cast<double>(m) * grid.spacing;
    out.push_back(h);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace fraclap
