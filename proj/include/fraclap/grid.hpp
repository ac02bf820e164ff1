#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/descriptor.hpp"
#include "fraclap/geometry.hpp"

namespace fraclap {

using Offset = std::vector<long>;

// Uniform isotropic grid, row-major with the last axis fastest. d <= 3.
struct Grid {
  Vec origin;
  double spacing = 0.0;
  std::vector<std::size_t> shape;

  Grid() = default;
  Grid(Vec origin, double spacing, std::vector<std::size_t> shape);
  // n cells per axis over the box [lo, hi]^d (hi - lo must agree on every axis).
  static Grid box(const Vec& lo, double length, std::size_t n);

  int dim() const { return static_cast<int>(shape.size()); }
  std::size_t size() const;
  Vec point(std::size_t flat) const;
  std::size_t flat(std::span<const long> idx) const;
  double cell_volume() const;
  // Integer offset of h; throws unless every component is a multiple of the spacing.
  Offset offset(std::span<const double> h) const;
  Vec vector(const Offset& m) const;

  bool operator==(const Grid&) const = default;
};

struct Meta {
  std::optional<double> s;
  std::string source;
  bool zero_extended = false;
  bool operator==(const Meta&) const = default;
};

struct GridFunction {
  Grid grid;
  std::vector<double> values;
  Domain domain;
  Meta meta;

  double at(std::size_t flat) const { return values[flat]; }
};

// Pointwise sampling. zero_extend defaults to the descriptor's flag.
GridFunction sample(const Descriptor& fn, const Grid& grid, const Domain& dom,
                    std::optional<bool> zero_extend = std::nullopt);
GridFunction sample_fn(const std::function<double(std::span<const double>)>& fn, const Grid& grid,
                    const Domain& dom, bool zero_extend, std::string source = "callable");

GridFunction translate(const GridFunction& v, std::span<const double> h);
GridFunction difference(const GridFunction& v, std::span<const double> h, int order);

// Nodes where the discrete norm is evaluated.
struct Restriction {
  enum class Kind { whole_space, inner };
  Kind kind = Kind::whole_space;
  std::vector<Domain> sets;  // inner: intersection of the sets' inner parallel sets

  static Restriction whole_space() { return {}; }
  static Restriction inner(Domain d) { return {Kind::inner, {std::move(d)}}; }
  static Restriction inner(std::vector<Domain> ds) { return {Kind::inner, std::move(ds)}; }
  // Node is kept when it lies in every set at distance > lambda from its boundary.
  bool keeps(std::span<const double> x, double lambda, double spacing) const;
  std::string tag() const;
};

// L2 norm of the piecewise multilinear interpolant over the cells whose corners are all kept.
double l2_norm(const GridFunction& v, const Restriction& where = Restriction::whole_space(),
               double lambda = 0.0);
double l2_norm_on(const GridFunction& v, const Domain& dom);

// Radial quintic cutoff: 1 on D_rho(center), 0 outside D_{2 rho}(center).
class Cutoff {
 public:
  Cutoff(Vec center, double rho);
  double operator()(std::span<const double> x) const;
  const Vec& center() const { return center_; }
  double rho() const { return rho_; }
  // ||phi||_inf + ||grad phi||_inf = 1 + 15 / (8 rho).
  double lipschitz_bound() const { return 1.0 + 15.0 / (8.0 * rho_); }

 private:
  Vec center_;
  double rho_;
};

GridFunction localized_translate(const GridFunction& v, const Cutoff& cut, std::span<const double> h);

struct ModulusRow {
  double h;
  Vec direction;
  double omega;
  std::string restriction;
};

struct ModulusProfile {
  int order = 2;
  int p = 2;
  std::vector<ModulusRow> rows;
};

ModulusProfile modulus(const GridFunction& v, int order, const std::vector<Vec>& steps,
                       const Restriction& restrict);

// Dyadic aligned steps m * spacing along axis 0, m = min_cells * 2^k, |h| <= h_max, decreasing.
std::vector<Vec> dyadic_steps(const Grid& grid, double h_max, long min_cells = 4);

}  // namespace fraclap
