#include "fraclap/solver1d.hpp"

#include <cmath>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {

constexpr long kMargin = 2;

bool on_lattice(double x, double a, double h) {
  const double k = (x - a) / h;
  return std::abs(k - std::round(k)) < 1e-9;
}

std::vector<double> nodal_values(const Mesh& mesh, const Eigen::VectorXd& c) {
  std::vector<double> nodal(mesh.nodes.size(), 0.0);
  for (std::size_t i = 0; i < mesh.interior_dofs.size(); ++i) nodal[mesh.interior_dofs[i]] = c[static_cast<long>(i)];
  return nodal;
}

}  // namespace

Mesh Mesh::uniform(const Domain& dom, std::size_t n_cells) {
  if (dom.kind() != Domain::Kind::interval_union) throw InvalidArgument("the solver needs an interval domain");
  if (n_cells < 2) throw InvalidArgument("mesh needs at least two cells");
  const double a = dom.pieces().front().a, b = dom.pieces().back().b;
  Mesh m;
  m.domain = dom;
  m.spacing = (b - a) / static_cast<double>(n_cells);
  for (const auto& iv : dom.pieces())
    if (!on_lattice(iv.a, a, m.spacing) || !on_lattice(iv.b, a, m.spacing))
      throw InvalidArgument("interval endpoints must be mesh nodes");
  for (std::size_t i = 0; i <= n_cells; ++i) {
    const double x = a + static_cast<double>(i) * m.spacing;
    m.nodes.push_back(x);
    if (dom.contains(std::span<const double>(&x, 1)) && dom.boundary_distance(std::span<const double>(&x, 1)) > 1e-9 * m.spacing)
      m.interior_dofs.push_back(i);
  }
  return m;
}

Eigen::MatrixXd assemble_stiffness(const Mesh& mesh, const FracParams& params) {
  if (params.d != 1) throw InvalidArgument("the solver is one-dimensional");
  const std::size_t n = mesh.dofs();
  if (n < 2) throw InvalidArgument("mesh needs at least two interior dofs");
  const double s = params.s;
  const auto prof = kernels::stiffness_profile(mesh.nodes.size(), s);
  const double scale = 0.5 * params.c_ds * std::pow(mesh.spacing, 1.0 - 2.0 * s);
  Eigen::MatrixXd A(static_cast<long>(n), static_cast<long>(n));
  const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nn; ++i)
    for (long j = 0; j < nn; ++j) {
      const long gi = static_cast<long>(mesh.interior_dofs[static_cast<std::size_t>(i)]);
      const long gj = static_cast<long>(mesh.interior_dofs[static_cast<std::size_t>(j)]);
      A(i, j) = scale * prof[static_cast<std::size_t>(std::labs(gi - gj))];
    }
  return A;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const Descriptor& f) {
  const auto& g = gauss_legendre(5);
  const double h = mesh.spacing;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<long>(mesh.dofs()));
  for (std::size_t i = 0; i < mesh.dofs(); ++i) {
    const double xi = mesh.nodes[mesh.interior_dofs[i]];
    double acc = 0.0;
    for (int side = -1; side <= 1; side += 2) {
      // Element between xi and xi + side h; the hat is 1 - |x - xi| / h.
      for (std::size_t q = 0; q < g.x.size(); ++q) {
        const double r = 0.5 * (g.x[q] + 1.0);
        double x = xi + side * r * h;
        const double fx = f(std::span<const double>(&x, 1));
        if (!std::isfinite(fx)) throw InvalidArgument("load is not evaluable on the domain");
        acc += 0.5 * h * g.w[q] * (1.0 - r) * fx;
      }
    }
    b[static_cast<long>(i)] = acc;
  }
  return b;
}

double condition_estimate(const Eigen::MatrixXd& A) {
  const long n = A.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw ConvergenceError("stiffness matrix is not positive definite");
  auto start = [n] {
    Eigen::VectorXd v(n);
    for (long i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 3.0 * static_cast<double>(i));
    return Eigen::VectorXd(v.normalized());
  };
  Eigen::VectorXd v = start();
  double lmax = 0.0;
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXd w = A * v;
    lmax = v.dot(w);
    v = w.normalized();
  }
  v = start();
  double inv = 0.0;
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXd w = llt.solve(v);
    inv = v.dot(w);
    v = w.normalized();
  }
  return lmax * inv;
}

Solution solve_dirichlet(const Mesh& mesh, const FracParams& params, const Descriptor& f) {
  const Eigen::MatrixXd A = assemble_stiffness(mesh, params);
  const Eigen::VectorXd b = assemble_load(mesh, f);
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw ConvergenceError("stiffness matrix is not positive definite");
  Solution sol;
  sol.coeffs = llt.solve(b);

  const auto nodal = nodal_values(mesh, sol.coeffs);
  const std::size_t total = mesh.nodes.size() + 2 * kMargin;
  Grid grid({mesh.nodes.front() - kMargin * mesh.spacing}, mesh.spacing, {total});
  sol.u.grid = grid;
  sol.u.values.assign(total, 0.0);
  for (std::size_t i = 0; i < nodal.size(); ++i) sol.u.values[i + kMargin] = nodal[i];
  sol.u.domain = mesh.domain;
  sol.u.meta.s = params.s;
  sol.u.meta.source = "solve:" + f.name();
  sol.u.meta.zero_extended = true;

  SolveReport& r = sol.report;
  r.energy = sol.coeffs.dot(A * sol.coeffs);
  r.load_pairing = b.dot(sol.coeffs);
  r.stability_gap = r.energy - r.load_pairing;
  r.l2 = l2_norm(sol.u);
  r.cond_est = condition_estimate(A);
  return sol;
}

double l2_error(const Mesh& mesh, const Eigen::VectorXd& coeffs, const Descriptor& exact) {
  const auto nodal = nodal_values(mesh, coeffs);
  const double h = mesh.spacing;
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < mesh.nodes.size(); ++k) {
    const double a = mesh.nodes[k], b = mesh.nodes[k + 1];
    const double mid = 0.5 * (a + b);
    if (!mesh.domain.contains(std::span<const double>(&mid, 1))) continue;
    const double ua = nodal[k], ub = nodal[k + 1];
    auto err2 = [&](double x) {
      const double uh = ua + (ub - ua) * (x - a) / h;
      const double e = uh - exact(std::span<const double>(&x, 1));
      return e * e;
    };
    const bool touches = mesh.domain.boundary_distance(std::span<const double>(&mid, 1)) < h;
    acc += touches ? graded_gauss(err2, a, b, 8) : gauss(err2, a, b, 8);
  }
  return std::sqrt(acc);
}

}  // namespace fraclap
