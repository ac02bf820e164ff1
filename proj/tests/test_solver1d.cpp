#include <doctest.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "fraclap/errors.hpp"
#include "fraclap/solver1d.hpp"

using namespace fraclap;

namespace {

// A_ii for a hat of width 2h inside (-1, 1), C/2 int int (phi(x)-phi(y))^2 |x-y|^{-1-2s}.
// Split at |x-y| = r: the near part in (x, r) with phi(x)-phi(x+r) handled by a nested rule,
// the rest closed form over R.
double hat_energy_oracle(double h, double s) {
  using boost::math::quadrature::gauss_kronrod;
  const auto phi = [h](double x) { return std::max(0.0, 1.0 - std::abs(x) / h); };
  // int_R int_R (phi(x)-phi(y))^2 k = 2 int_0^inf r^{-1-2s} int_R (phi(x+r)-phi(x))^2 dx dr
  // inner integral g(r) in closed form for the hat:
  const auto g = [&](double r) {
    const auto inner = [&](double x) { const double d = phi(x + r) - phi(x); return d * d; };
    double acc = 0.0;
    std::vector<double> br = {-h - r, -r, h - r, -h, 0.0, h};
    std::sort(br.begin(), br.end());
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      if (br[i + 1] > br[i]) acc += gauss_kronrod<double, 15>::integrate(inner, br[i], br[i + 1], 0, 1e-14);
    return acc;
  };
  const auto dr = [&](double r) { return g(r) * std::pow(r, -1 - 2 * s); };
  double total = 0.0;
  // g(r) ~ 2 r^2 / h near 0, so r^{1-2s} is integrable; graded layers toward 0
  for (int k = 0; k < 60; ++k) {
    const double hi = 2 * h * std::pow(0.5, k), lo = hi / 2;
    total += gauss_kronrod<double, 31>::integrate(dr, lo, hi, 0, 1e-14);
  }
  total += 2 * (2 * h / 3) * std::pow(2 * h, -2 * s) / (2 * s);  // r > 2h: g = 2 ||phi||^2
  return normalization_constant(1, s) / 2 * 2 * total;
}

}  // namespace

TEST_CASE("mesh") {
  const Mesh m = Mesh::uniform(Domain::interval(-1, 1), 8);
  CHECK(m.nodes.size() == 9);
  CHECK(m.dofs() == 7);
  CHECK(m.spacing == doctest::Approx(0.25));
  const Mesh two = Mesh::uniform(Domain::intervals({{-1, -0.2}, {0.2, 1}}), 20);
  CHECK(two.dofs() == 14);
  CHECK_THROWS_AS(Mesh::uniform(Domain::intervals({{-1, -0.25}, {0.2, 1}}), 20), InvalidArgument);
}

TEST_CASE("stiffness is symmetric positive definite") {
  for (std::size_t n : {16u, 64u, 256u})
    for (double s : {0.25, 0.5, 0.75}) {
      const Mesh m = Mesh::uniform(Domain::interval(-1, 1), n);
      const Eigen::MatrixXd A = assemble_stiffness(m, FracParams(s, 1));
      CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
      Eigen::LLT<Eigen::MatrixXd> llt(A);
      CHECK(llt.info() == Eigen::Success);
    }
}

TEST_CASE("diagonal entry against nested quadrature") {
  for (double s : {0.5, 0.3, 0.7}) {
    const Mesh m = Mesh::uniform(Domain::interval(-1, 1), 32);
    const Eigen::MatrixXd A = assemble_stiffness(m, FracParams(s, 1));
    const double want = hat_energy_oracle(m.spacing, s);
    CHECK(std::abs(A(10, 10) - want) <= 1e-8 * want);
  }
}

TEST_CASE("load vector") {
  const Mesh m = Mesh::uniform(Domain::interval(-1, 1), 64);
  const auto b1 = assemble_load(m, Descriptor::constant(1.0));
  for (Eigen::Index i = 0; i < b1.size(); ++i) CHECK(b1[i] == doctest::Approx(m.spacing).epsilon(1e-14));
  CHECK(assemble_load(m, Descriptor::constant(0.0)).cwiseAbs().maxCoeff() == 0.0);
  const auto b2 = assemble_load(m, Descriptor::constant(2.0));
  CHECK((b2 - 2 * b1).cwiseAbs().maxCoeff() == 0.0);
  // x^2 is integrated exactly by 5-point Gauss against a hat: int (x_i+t)^2 phi = h (x_i^2 + h^2/6)
  const auto bq = assemble_load(m, Descriptor::parse("poly:0,0,1"));
  const double xi = m.nodes[m.interior_dofs[5]];
  CHECK(bq[5] == doctest::Approx(m.spacing * (xi * xi + m.spacing * m.spacing / 6)).epsilon(1e-13));
}

TEST_CASE("dirichlet solves") {
  const Domain om = Domain::interval(-1, 1);
  const auto sol = solve_dirichlet(Mesh::uniform(om, 512), FracParams(0.5, 1), Descriptor::constant(1.0));
  const auto& g = sol.u.grid;
  const std::size_t mid = static_cast<std::size_t>(std::lround((0.0 - g.origin[0]) / g.spacing));
  CHECK(sol.u.values[mid] == doctest::Approx(1.0).epsilon(0.01));
  CHECK(sol.u.meta.zero_extended);
  CHECK(sol.u.meta.s.value() == 0.5);
  CHECK(std::abs(sol.report.stability_gap) <= 1e-10 * std::max(1.0, sol.report.energy));
  CHECK(sol.report.cond_est > 1.0);

  const auto zero = solve_dirichlet(Mesh::uniform(om, 64), FracParams(0.3, 1), Descriptor::constant(0.0));
  for (double x : zero.u.values) CHECK(x == 0.0);

  const auto two = solve_dirichlet(Mesh::uniform(Domain::intervals({{-1, -0.2}, {0.2, 1}}), 100), FracParams(0.4, 1),
                                   Descriptor::constant(1.0));
  const auto& g2 = two.u.grid;
  for (std::size_t i = 0; i < g2.size(); ++i) {
    const double x = g2.point(i)[0];
    if (std::abs(x) <= 0.2 + 1e-12) CHECK(two.u.values[i] == 0.0);
    if (std::abs(x) >= 1.0 - 1e-12) CHECK(two.u.values[i] == 0.0);
  }
  CHECK(*std::max_element(two.u.values.begin(), two.u.values.end()) > 0.0);
}

TEST_CASE("energy identity for random discrete functions") {
  const Mesh m = Mesh::uniform(Domain::interval(-1, 1), 128);
  const FracParams p(0.35, 1);
  const Eigen::MatrixXd A = assemble_stiffness(m, p);
  const Eigen::VectorXd b = assemble_load(m, Descriptor::constant(1.0));
  const auto sol = solve_dirichlet(m, p, Descriptor::constant(1.0));
  const Eigen::VectorXd& u = sol.coeffs;
  const auto F = [&](const Eigen::VectorXd& v) { return 0.5 * v.dot(A * v) - b.dot(v); };
  std::mt19937_64 rng(17);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd v(u.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u[i] + 0.1 * N(rng);
    const Eigen::VectorXd e = v - u;
    CHECK(std::abs(F(v) - F(u) - 0.5 * e.dot(A * e)) <= 1e-10);
  }
  CHECK(sol.report.energy == doctest::Approx(u.dot(A * u)).epsilon(1e-12));
  CHECK(sol.report.load_pairing == doctest::Approx(b.dot(u)).epsilon(1e-12));
}

TEST_CASE("convergence to the explicit solution") {
  const Domain om = Domain::interval(-1, 1);
  for (double s : {0.25, 0.5, 0.75}) {
    std::vector<double> err, l2;
    for (std::size_t n = 64; n <= 1024; n *= 2) {
      const Mesh m = Mesh::uniform(om, n);
      const auto sol = solve_dirichlet(m, FracParams(s, 1), Descriptor::constant(1.0));
      err.push_back(l2_error(m, sol.coeffs, getoor_solution(1, s, 1.0)));
      l2.push_back(sol.report.l2);
    }
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] < err[i - 1]);
    const double order = std::log2(err.front() / err.back()) / 4.0;
    CHECK(order >= 0.5);
    for (std::size_t i = 1; i < l2.size(); ++i) CHECK(std::abs(l2[i] / l2[0] - 1) < 0.05);
  }
}

TEST_CASE("condition estimate") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, 4);
  D.diagonal() << 1.0, 2.0, 5.0, 10.0;
  CHECK(condition_estimate(D) == doctest::Approx(10.0).epsilon(1e-6));
}
