#pragma once

#include <span>
#include <algorithm>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "fraclap/geometry.hpp"

namespace fraclap {

// Closed-form function named by a string:
//   getoor:d,s,r   kappa (r^2 - |x|^2)_+^s
//   power:alpha    (x_0)_+^alpha
//   bump[:r]       exp(1 - 1/(1 - |x|^2/r^2)) inside |x| < r
//   const:c        c
//   poly:c0,c1,... sum_k c_k x_0^k
//   table:path     two-column CSV (x, value), linear interpolation, 0 outside
class Descriptor {
 public:
  enum class Family { getoor, power, bump, constant, poly, table };

  static Descriptor parse(std::string_view text);
  static Descriptor getoor(int d, double s, double r);
  static Descriptor constant(double c);

  double operator()(std::span<const double> x) const;

  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }

  // Default zero-extension flag used by sample().
  bool zero_extended() const;
  // Support is the closed ball of support_radius() about the origin.
  bool compact() const { return family_ == Family::getoor || family_ == Family::bump; }
  double support_radius() const;
  // Required dimension, 0 when any dimension is accepted.
  int dim() const;

  // Positive t at which t -> f(x + t w) or f(x - t w) is not smooth.
  std::vector<double> line_breaks(std::span<const double> x, std::span<const double> w) const;

 private:
  Family family_ = Family::constant;
  std::string name_;
  std::vector<double> params_;
  std::vector<double> table_x_, table_y_;
};

// Getoor coefficient 2^{-2s} Gamma(d/2) / (Gamma((d+2s)/2) Gamma(1+s)).
double getoor_kappa(int d, double s);

}  // namespace fraclap
