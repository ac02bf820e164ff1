// Times the OpenMP kernels against the serial references and checks they agree.
#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "fraclap/descriptor.hpp"
#include "fraclap/fracop.hpp"
#include "fraclap/kernels.hpp"

using namespace fraclap;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void row(const char* name, double ts, double tp, double diff) {
  std::printf("%-22s %10.4f %10.4f %8.2fx %12.3e\n", name, ts, tp, ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmark: serial reference vs OpenMP"};
  std::size_t n = 1 << 14;
  int reps = 3;
  app.add_option("--n", n, "Cells of the 1D grid")->capture_default_str();
  app.add_option("--reps", reps, "Repetitions, best time reported")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::printf("threads %d, n = %zu\n", omp_get_max_threads(), n);
  std::printf("%-22s %10s %10s %9s %12s\n", "kernel", "serial[s]", "omp[s]", "speedup", "max|diff|");

  const Grid g = Grid::box({-1.5}, 3.0, n);
  const Domain om = Domain::interval(-1.0, 1.0);
  const GridFunction v = sample(getoor_solution(1, 0.5, 1.0), g, om);
  std::vector<Offset> offs;
  for (long m = 4; m * g.spacing <= 0.5; m *= 2) {
    offs.push_back({m});
    offs.push_back({m + 1});
  }
  const auto where = Restriction::inner(om);
  std::vector<double> a, b;
  const double ts1 = best_of(reps, [&] { a = reference::difference_norms(v, 2, offs, where); });
  const double tp1 = best_of(reps, [&] { b = kernels::difference_norms(v, 2, offs, where); });
  row("difference_norms", ts1, tp1, max_diff(a, b));

  const std::size_t kmax = std::min<std::size_t>(n, 4096);
  const double ts2 = best_of(reps, [&] { a = reference::stiffness_profile(kmax, 0.3); });
  const double tp2 = best_of(reps, [&] { b = kernels::stiffness_profile(kmax, 0.3); });
  row("stiffness_profile", ts2, tp2, max_diff(a, b));

  const std::size_t m = std::min<std::size_t>(v.values.size(), 8192);
  std::vector<double> w(v.values.begin(), v.values.begin() + static_cast<long>(m));
  const auto prof = kernels::stiffness_profile(m, 0.3);
  double qa = 0, qb = 0;
  const double ts3 = best_of(reps, [&] { qa = reference::toeplitz_quadratic(w, prof); });
  const double tp3 = best_of(reps, [&] { qb = kernels::toeplitz_quadratic(w, prof); });
  row("toeplitz_quadratic", ts3, tp3, std::abs(qa - qb));

  const std::size_t cells = std::min<std::size_t>(n, 2048);
  const Grid gc = Grid::box({-1.5}, 3.0, cells);
  const GridFunction vc = sample(getoor_solution(1, 0.5, 1.0), gc, om);
  CellPairInput in{&vc.values, gc.spacing, 0.4, std::vector<char>(cells, 1), std::vector<char>(cells, 1)};
  const double ts4 = best_of(reps, [&] { qa = reference::cell_pair_sum(in); });
  const double tp4 = best_of(reps, [&] { qb = kernels::cell_pair_sum(in); });
  row("cell_pair_sum", ts4, tp4, std::abs(qa - qb));
  return 0;
}
