#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fraclap {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule with n points, cached per n.
const GaussRule& gauss_legendre(std::size_t n);

double gauss(const std::function<double(double)>& f, double a, double b, std::size_t n);

// Composite Gauss on [a, b] with geometric grading toward both ends
// (ratio q, `levels` layers each side). Handles algebraic endpoint singularities.
double graded_gauss(const std::function<double(double)>& f, double a, double b, std::size_t n,
                    int levels = 60, double q = 0.5);

}  // namespace fraclap
