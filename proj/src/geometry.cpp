#include "fraclap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

// Relative slack for boundary-ray membership; h.n == |h| cos(theta) is not
// reproducible in floating point.
constexpr double kConeSlack = 1e-12;

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.a <= out.back().b) {
      out.back().b = std::max(out.back().b, iv.b);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

// Deterministic low-discrepancy points in [-1, 1]^d (additive recurrence).
Vec quasi_point(std::size_t i, int d) {
  static const double alphas[] = {0.7548776662466927, 0.5698402909980532, 0.6180339887498949,
                                  0.4142135623730950};
  Vec p(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double a = alphas[k % 4];
    double t = std::fmod(0.5 + a * static_cast<double>(i + 1), 1.0);
    p[static_cast<std::size_t>(k)] = 2.0 * t - 1.0;
  }
  return p;
}

}  // namespace

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Domain Domain::intervals(std::vector<Interval> pieces) {
  if (pieces.empty()) throw InvalidArgument("interval union needs at least one interval");
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].a < pieces[i].b) || !std::isfinite(pieces[i].a) || !std::isfinite(pieces[i].b))
      throw InvalidArgument("interval endpoints must be finite with a < b");
    if (i > 0 && !(pieces[i - 1].b < pieces[i].a))
      throw InvalidArgument("intervals must be pairwise disjoint");
  }
  Domain d;
  d.kind_ = Kind::interval_union;
  d.dim_ = 1;
  d.pieces_ = std::move(pieces);
  return d;
}

Domain Domain::ball(Vec center, double radius) {
  if (center.empty()) throw InvalidArgument("ball dimension must be >= 1");
  if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
  Domain d;
  d.kind_ = Kind::ball;
  d.dim_ = static_cast<int>(center.size());
  d.center_ = std::move(center);
  d.radius_ = radius;
  return d;
}

bool Domain::contains(std::span<const double> x) const {
  if (kind_ == Kind::interval_union) {
    for (const auto& iv : pieces_)
      if (x[0] > iv.a && x[0] < iv.b) return true;
    return false;
  }
  double r2 = 0.0;
  for (int k = 0; k < dim_; ++k) {
    const double t = x[static_cast<std::size_t>(k)] - center_[static_cast<std::size_t>(k)];
    r2 += t * t;
  }
  return std::sqrt(r2) < radius_;
}

bool Domain::contains_closed(std::span<const double> x, double slack) const {
  if (kind_ == Kind::interval_union) {
    for (const auto& iv : pieces_)
      if (x[0] >= iv.a - slack && x[0] <= iv.b + slack) return true;
    return false;
  }
  double r2 = 0.0;
  for (int k = 0; k < dim_; ++k) {
    const double t = x[static_cast<std::size_t>(k)] - center_[static_cast<std::size_t>(k)];
    r2 += t * t;
  }
  return std::sqrt(r2) <= radius_ + slack;
}

double Domain::boundary_distance(std::span<const double> x) const {
  if (kind_ == Kind::interval_union) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& iv : pieces_) d = std::min({d, std::abs(x[0] - iv.a), std::abs(x[0] - iv.b)});
    return d;
  }
  double r2 = 0.0;
  for (int k = 0; k < dim_; ++k) {
    const double t = x[static_cast<std::size_t>(k)] - center_[static_cast<std::size_t>(k)];
    r2 += t * t;
  }
  return std::abs(std::sqrt(r2) - radius_);
}

Vec Domain::lower() const {
  if (kind_ == Kind::interval_union) return {pieces_.front().a};
  Vec v = center_;
  for (auto& c : v) c -= radius_;
  return v;
}

Vec Domain::upper() const {
  if (kind_ == Kind::interval_union) return {pieces_.back().b};
  Vec v = center_;
  for (auto& c : v) c += radius_;
  return v;
}

Domain Domain::intersect(const Domain& other) const {
  if (kind_ != Kind::interval_union || other.kind_ != Kind::interval_union)
    throw InvalidArgument("intersection is only supported for interval unions");
  std::vector<Interval> out;
  for (const auto& p : pieces_)
    for (const auto& q : other.pieces_) {
      const double a = std::max(p.a, q.a);
      const double b = std::min(p.b, q.b);
      if (a < b) out.push_back({a, b});
    }
  if (out.empty()) throw InvalidArgument("empty intersection");
  return intervals(std::move(out));
}

OffsetClass offset_membership(const Domain& dom, std::span<const double> x, double lambda) {
  const double dist = dom.boundary_distance(x);
  const bool in = dom.contains(x);
  if (in && dist > lambda) return OffsetClass::inner;
  if (!in && dist >= lambda) return OffsetClass::outer;
  return OffsetClass::band;
}

Cone::Cone(Vec axis, double half_opening, double radius)
    : axis_(std::move(axis)), half_opening_(half_opening), radius_(radius) {
  if (axis_.empty()) throw InvalidArgument("cone axis must have dimension >= 1");
  const double n = norm(axis_);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cone axis must be nonzero");
  for (auto& a : axis_) a /= n;
  if (!(half_opening_ > 0.0) || half_opening_ > std::numbers::pi / 2 + 1e-15)
    throw InvalidArgument("cone half-opening must lie in (0, pi/2]");
  if (!(radius_ > 0.0)) throw InvalidArgument("cone radius must be positive");
  if (axis_.size() == 1) {
    generating_constant_ = 1.0;
  } else if (half_opening_ <= std::numbers::pi / 3) {
    generating_constant_ = 1.0 / std::sin(half_opening_ / 2);
  } else {
    generating_constant_ = 1.0 + 2.0 * std::cos(half_opening_);
  }
}

double Cone::generating_radius() const {
  if (axis_.size() == 1) return radius_;
  return radius_ * std::sin(half_opening_ / 2);
}

bool Cone::contains(std::span<const double> h) const {
  const double len = norm(h);
  if (len == 0.0) return true;
  if (len > radius_ * (1.0 + kConeSlack)) return false;
  return dot(h, axis_) >= len * std::cos(half_opening_) - kConeSlack * len;
}

bool cone_contains(const Cone& cone, std::span<const double> h) { return cone.contains(h); }

std::vector<Vec> decompose_direction(const Cone& cone, std::span<const double> h) {
  if (static_cast<int>(h.size()) != cone.dim())
    throw InvalidArgument("direction dimension does not match cone");
  const double len = norm(h);
  if (len > cone.generating_radius() * (1.0 + 1e-12))
    throw OutOfRange("|h| exceeds the generating radius of the cone");
  Vec hv(h.begin(), h.end());
  if (cone.dim() == 1 || len == 0.0) return {hv};
  const auto& n = cone.axis();
  const double along = dot(h, n);
  const double cos_t = std::cos(cone.half_opening());
  if (std::abs(along) >= len * cos_t - kConeSlack * len) return {hv};

  // Boundary ray of the cone in the plane spanned by n and h, on the side of h.
  Vec perp(hv);
  for (std::size_t k = 0; k < perp.size(); ++k) perp[k] -= along * n[k];
  const double plen = norm(perp);
  const double sin_t = std::sin(cone.half_opening());
  const double alpha = plen / sin_t;
  Vec h1(hv.size()), h2(hv.size());
  for (std::size_t k = 0; k < hv.size(); ++k) {
    h1[k] = alpha * (cos_t * n[k] + sin_t * perp[k] / plen);
    h2[k] = hv[k] - h1[k];
  }
  return {h1, h2};
}

TwoTermSplit split_two_term(const Cone& cone, std::span<const double> h) {
  if (norm(h) > 0.5 * cone.generating_radius() * (1.0 + 1e-12))
    throw OutOfRange("two-term split requires |h| <= rho0 / 2");
  TwoTermSplit out{Vec(h.size(), 0.0), Vec(h.size(), 0.0)};
  for (const auto& piece : decompose_direction(cone, h)) {
    if (dot(piece, cone.axis()) >= 0.0) {
      for (std::size_t k = 0; k < h.size(); ++k) out.plus[k] += piece[k];
    } else {
      for (std::size_t k = 0; k < h.size(); ++k) out.minus[k] -= piece[k];
    }
  }
  return out;
}

double admissible_radius(const Domain& dom) {
  if (dom.kind() == Domain::Kind::ball) return std::min(1.0, dom.radius() / 8.0);
  const auto& p = dom.pieces();
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    m = std::min(m, p[i].length());
    if (i + 1 < p.size()) m = std::min(m, p[i + 1].a - p[i].b);
  }
  return std::min(1.0, m / 8.0);
}

Cone admissible_cone(const Domain& dom, std::span<const double> x0) {
  const double theta = std::numbers::pi / 4;
  const double rho = admissible_radius(dom);
  if (dom.kind() == Domain::Kind::interval_union) {
    double best = std::numeric_limits<double>::infinity();
    double dir = 1.0;
    for (const auto& iv : dom.pieces()) {
      if (std::abs(x0[0] - iv.a) < best) {
        best = std::abs(x0[0] - iv.a);
        dir = -1.0;
      }
      if (std::abs(x0[0] - iv.b) < best) {
        best = std::abs(x0[0] - iv.b);
        dir = 1.0;
      }
    }
    return Cone({dir}, theta, rho);
  }
  Vec n(x0.begin(), x0.end());
  for (std::size_t k = 0; k < n.size(); ++k) n[k] -= dom.center()[k];
  if (norm(n) < 1e-14) {
    std::fill(n.begin(), n.end(), 0.0);
    n[0] = 1.0;
  }
  return Cone(n, theta, rho);
}

bool is_admissible_outward(const Domain& dom, std::span<const double> x0, double rho,
                           std::span<const double> h, std::size_t samples) {
  if (norm(h) > rho * (1.0 + 1e-12)) return false;
  const int d = dom.dim();
  const int tsteps = 16;
  Vec y(static_cast<std::size_t>(d)), z(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < samples; ++i) {
    if (d == 1) {
      y[0] = x0[0] - 3 * rho + 6 * rho * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    } else {
      const Vec q = quasi_point(i, d);
      if (norm(q) >= 1.0) continue;
      for (int k = 0; k < d; ++k)
        y[static_cast<std::size_t>(k)] = x0[static_cast<std::size_t>(k)] + 3 * rho * q[static_cast<std::size_t>(k)];
    }
    if (dom.contains_closed(y)) continue;
    for (int t = 0; t <= tsteps; ++t) {
      const double tt = static_cast<double>(t) / tsteps;
      for (int k = 0; k < d; ++k)
        z[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(k)] + tt * h[static_cast<std::size_t>(k)];
      if (dom.contains(z)) return false;
    }
  }
  return true;
}

Covering::Covering(std::vector<Vec> centers, double radius)
    : centers_(std::move(centers)), radius_(radius) {
  if (centers_.empty()) throw InvalidArgument("covering needs at least one ball");
  if (!(radius_ > 0.0)) throw InvalidArgument("covering radius must be positive");
}

Covering Covering::build(const Domain& dom, double rho, double delta) {
  if (!(rho > 0.0) || delta < 0.0) throw InvalidArgument("covering needs rho > 0, delta >= 0");
  std::vector<Vec> centers;
  if (dom.kind() == Domain::Kind::interval_union) {
    std::vector<Interval> grown;
    for (const auto& iv : dom.pieces()) grown.push_back({iv.a - delta, iv.b + delta});
    for (const auto& c : merge(grown)) {
      const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(c.length() / rho)));
      const double sp = c.length() / static_cast<double>(m);
      for (std::size_t j = 0; j < m; ++j)
        centers.push_back({c.a + sp * (static_cast<double>(j) + 0.5)});
    }
  } else {
    const int d = dom.dim();
    const double sp = 0.99 * 2.0 * rho / std::sqrt(static_cast<double>(d));
    const double reach = dom.radius() + delta;
    const auto half = static_cast<long>(std::ceil(reach / sp)) + 1;
    std::vector<long> idx(static_cast<std::size_t>(d), -half);
    while (true) {
      Vec c(static_cast<std::size_t>(d));
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) {
        const double off = sp * static_cast<double>(idx[static_cast<std::size_t>(k)]);
        c[static_cast<std::size_t>(k)] = dom.center()[static_cast<std::size_t>(k)] + off;
        r2 += off * off;
      }
      if (std::sqrt(r2) < reach + rho) centers.push_back(std::move(c));
      int k = 0;
      while (k < d && ++idx[static_cast<std::size_t>(k)] > half) {
        idx[static_cast<std::size_t>(k)] = -half;
        ++k;
      }
      if (k == d) break;
    }
  }
  return Covering(std::move(centers), rho);
}

Domain Covering::ball_domain(std::size_t j) const {
  const Vec& c = centers_.at(j);
  if (c.size() == 1) return Domain::interval(c[0] - radius_, c[0] + radius_);
  return Domain::ball(c, radius_);
}

bool Covering::covers(const Domain& dom, double delta) const {
  if (dom.kind() == Domain::Kind::interval_union) {
    std::vector<Interval> cover;
    for (const auto& c : centers_) cover.push_back({c[0] - radius_, c[0] + radius_});
    cover = merge(cover);
    std::vector<Interval> grown;
    for (const auto& iv : dom.pieces()) grown.push_back({iv.a - delta, iv.b + delta});
    for (const auto& g : merge(grown)) {
      const bool inside = std::any_of(cover.begin(), cover.end(), [&](const Interval& c) {
        return c.a <= g.a && g.b <= c.b;
      });
      if (!inside) return false;
    }
    return true;
  }
  const int d = dom.dim();
  const double reach = dom.radius() + delta;
  Vec y(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < 20000; ++i) {
    const Vec q = quasi_point(i, d);
    if (norm(q) >= 1.0) continue;
    for (int k = 0; k < d; ++k)
      y[static_cast<std::size_t>(k)] = dom.center()[static_cast<std::size_t>(k)] + reach * q[static_cast<std::size_t>(k)];
    bool hit = false;
    for (const auto& c : centers_) {
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) {
        const double t = y[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)];
        r2 += t * t;
      }
      if (r2 <= radius_ * radius_) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace fraclap
