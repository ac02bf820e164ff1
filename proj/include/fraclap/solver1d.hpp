#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fraclap/descriptor.hpp"
#include "fraclap/fracop.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

// Uniform mesh of the hull of an interval union; every endpoint must be a node.
struct Mesh {
  Domain domain;
  std::vector<double> nodes;
  std::vector<std::size_t> interior_dofs;  // nodes strictly inside some interval
  double spacing = 0.0;

  static Mesh uniform(const Domain& dom, std::size_t n_cells);
  std::size_t dofs() const { return interior_dofs.size(); }
};

struct SolveReport {
  double energy;
  double load_pairing;
  double stability_gap;
  double l2;
  double cond_est;
};

struct Solution {
  GridFunction u;
  SolveReport report;
  Eigen::VectorXd coeffs;  // values at the interior dofs
};

// a(phi_i, phi_j) over R x R with zero extension, interior dofs only.
Eigen::MatrixXd assemble_stiffness(const Mesh& mesh, const FracParams& params);
// int_Omega f phi_i, 5-point Gauss per element.
Eigen::VectorXd assemble_load(const Mesh& mesh, const Descriptor& f);

Solution solve_dirichlet(const Mesh& mesh, const FracParams& params, const Descriptor& f);

// ||u_h - exact||_{L2(Omega)}, graded quadrature on elements touching an endpoint.
double l2_error(const Mesh& mesh, const Eigen::VectorXd& coeffs, const Descriptor& exact);

// lambda_max / lambda_min by power and inverse iteration.
double condition_estimate(const Eigen::MatrixXd& A);

}  // namespace fraclap
