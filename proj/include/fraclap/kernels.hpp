#pragma once

#include <cstddef>
#include <vector>

#include "fraclap/grid.hpp"

// Hot loops. The versions in fraclap::kernels use OpenMP; every parallel loop writes
// one slot per index and the slots are reduced in index order, so results do not
// depend on the thread count. fraclap::reference holds plain serial versions.
namespace fraclap {

// Cells selected on each side of a 1D cell-pair integral.
struct CellPairInput {
  const std::vector<double>* w = nullptr;  // node values, P1 interpolant
  double spacing = 1.0;
  double sigma = 0.5;
  std::vector<char> x_cells;  // cell k = [x_k, x_{k+1}] used for the x variable
  std::vector<char> y_cells;
};

namespace kernels {

// ||delta_order(m) v|| over the restriction, one entry per offset.
std::vector<double> difference_norms(const GridFunction& v, int order, const std::vector<Offset>& offsets,
                                     const Restriction& where);

// Dimensionless stiffness profile I_k, k = 0..kmax, of unit-spaced hat functions:
// int int (phi_0(x)-phi_0(y))(phi_k(x)-phi_k(y)) |x-y|^{-1-2 sigma} dx dy.
std::vector<double> stiffness_profile(std::size_t kmax, double sigma);

// sum_{i,j} w_i w_j t_{|i-j|}.
double toeplitz_quadratic(const std::vector<double>& w, const std::vector<double>& t);

// sum over selected cell pairs of int int (w(x)-w(y))^2 |x-y|^{-1-2 sigma}.
double cell_pair_sum(const CellPairInput& in);

}  // namespace kernels

namespace reference {

std::vector<double> difference_norms(const GridFunction& v, int order, const std::vector<Offset>& offsets,
                                     const Restriction& where);
std::vector<double> stiffness_profile(std::size_t kmax, double sigma);
double toeplitz_quadratic(const std::vector<double>& w, const std::vector<double>& t);
double cell_pair_sum(const CellPairInput& in);

}  // namespace reference

namespace detail {

// Shared scalar formulas used by both variants.
double stiffness_entry(std::size_t k, double sigma);
double same_cell(double g, double spacing, double sigma);

struct AdjacentWeights {
  double tri, q0, q1, q2;
};
AdjacentWeights adjacent_weights(double sigma);
double adjacent_cells(const AdjacentWeights& aw, double g_left, double g_right, double spacing, double sigma);

struct FarMoments {
  double m00, m10, m01, m20, m02, m11;
};
// Moments int int xi^a eta^b (m + eta - xi)^{-1-2 sigma} over the unit square, m >= 2.
FarMoments far_moments(long m, double sigma);
double far_cells(const FarMoments& mom, double e, double b, double d, double spacing, double sigma);

// Corner-pair weights of the multilinear mass matrix of one cell in d dims.
std::vector<double> cell_mass(int d, double spacing);

}  // namespace detail

}  // namespace fraclap
