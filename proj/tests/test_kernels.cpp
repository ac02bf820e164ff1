#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <random>

#include "fraclap/fracop.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/quadrature.hpp"

using namespace fraclap;

TEST_CASE("gauss-legendre rules") {
  for (std::size_t n : {1u, 2u, 5u, 12u, 40u}) {
    const auto& r = gauss_legendre(n);
    double w = 0.0;
    for (double x : r.w) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK(gauss([](double x) { return std::pow(x, 9); }, 0, 1, 5) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(graded_gauss([](double x) { return std::pow(x, -0.5); }, 0, 1, 8) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(graded_gauss([](double x) { return std::pow(1 - x, 0.3); }, 0, 1, 8) == doctest::Approx(1 / 1.3).epsilon(1e-12));
}

TEST_CASE("stiffness profile matches prototype values") {
  const auto p3 = kernels::stiffness_profile(4, 0.3);
  CHECK(p3[0] == doctest::Approx(6.33944).epsilon(1e-5));
  CHECK(p3[1] == doctest::Approx(-0.36090).epsilon(1e-4));
  CHECK(p3[3] == doctest::Approx(-0.37597).epsilon(1e-4));
  const auto p7 = kernels::stiffness_profile(4, 0.7);
  CHECK(p7[0] == doctest::Approx(7.20660).epsilon(1e-5));
  CHECK(p7[1] == doctest::Approx(-2.50675).epsilon(1e-5));
  CHECK(p7[3] == doctest::Approx(-0.17052).epsilon(1e-4));
  // sigma = 1/2 goes through the removable singularity
  const auto a = kernels::stiffness_profile(6, 0.5), b = kernels::stiffness_profile(6, 0.5 + 1e-9);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-6));
  // hats sum to one, so the row sums vanish: I_0 + 2 sum_{k>=1} I_k = 0 (tail ~ k^{-1-2 sigma})
  const auto far = kernels::stiffness_profile(20000, 0.7);
  double row = far[0];
  for (std::size_t k = 1; k < far.size(); ++k) row += 2 * far[k];
  CHECK(std::abs(row) < 1e-4);
}

TEST_CASE("parallel kernels reproduce the serial references") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const Grid g = Grid::box({-1.0}, 2.0, 1000);
  GridFunction v = sample_fn([&](std::span<const double>) { return U(rng); }, g, Domain::interval(-0.6, 0.6), true);
  std::vector<Offset> offs = {{4}, {7}, {-11}, {64}, {200}};
  for (const auto& where : {Restriction::whole_space(), Restriction::inner(v.domain)})
    for (int order : {1, 2}) {
      const auto a = kernels::difference_norms(v, order, offs, where);
      const auto b = reference::difference_norms(v, order, offs, where);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
    }
  const Grid g2 = Grid::box({-1.0, -1.0}, 2.0, 60);
  GridFunction w = sample_fn([&](std::span<const double>) { return U(rng); }, g2, Domain::ball({0, 0}, 0.7), true);
  std::vector<Offset> o2 = {{4, 0}, {3, -5}, {0, 9}};
  const auto a2 = kernels::difference_norms(w, 2, o2, Restriction::inner(w.domain));
  const auto b2 = reference::difference_norms(w, 2, o2, Restriction::inner(w.domain));
  for (std::size_t i = 0; i < a2.size(); ++i) CHECK(a2[i] == doctest::Approx(b2[i]).epsilon(1e-13));

  const auto pa = kernels::stiffness_profile(300, 0.35), pb = reference::stiffness_profile(300, 0.35);
  for (std::size_t k = 0; k < pa.size(); ++k) CHECK(pa[k] == doctest::Approx(pb[k]).epsilon(1e-14));
  std::vector<double> vals(v.values.begin(), v.values.begin() + 300);
  CHECK(kernels::toeplitz_quadratic(vals, pa) == doctest::Approx(reference::toeplitz_quadratic(vals, pa)).epsilon(1e-12));

  CellPairInput in{&v.values, g.spacing, 0.4, std::vector<char>(1000, 1), std::vector<char>(1000, 0)};
  for (std::size_t k = 300; k < 700; ++k) in.y_cells[k] = 1;
  CHECK(kernels::cell_pair_sum(in) == doctest::Approx(reference::cell_pair_sum(in)).epsilon(1e-12));
}

TEST_CASE("kernel results do not depend on the thread count") {
  const Grid g = Grid::box({-1.5}, 3.0, 3000);
  const auto v = sample(getoor_solution(1, 0.3, 1.0), g, Domain::interval(-1, 1));
  std::vector<Offset> offs = {{4}, {8}, {16}, {32}};
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto a = kernels::difference_norms(v, 2, offs, Restriction::inner(v.domain));
  const double ga = gagliardo_seminorm(v, 0.3, GagliardoMode::full());
  omp_set_num_threads(4);
  const auto b = kernels::difference_norms(v, 2, offs, Restriction::inner(v.domain));
  const double gb = gagliardo_seminorm(v, 0.3, GagliardoMode::full());
  omp_set_num_threads(saved);
  CHECK(a == b);
  CHECK(ga == gb);
}
