#include <cmath>

#include "fraclap/errors.hpp"
#include "fraclap/fracop.hpp"

namespace fraclap {

namespace {

double pairing(const GridFunction& v, const GridFunction& f) {
  const double vol = v.grid.cell_volume();
  const double slack = 1e-9 * v.grid.spacing;
  double s = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    if (v.values[i] == 0.0 || f.values[i] == 0.0) continue;
    if (v.domain.contains_closed(v.grid.point(i), slack)) s += f.values[i] * v.values[i] * vol;
  }
  return s;
}

void check_pair(const GridFunction& v, const GridFunction& f) {
  if (!(v.grid == f.grid) || v.values.size() != f.values.size())
    throw InvalidArgument("v and f must live on the same grid");
}

}  // namespace

FunctionalValue dirichlet_functional(const GridFunction& v, const GridFunction& f, const FracParams& params) {
  check_pair(v, f);
  if (params.d != v.grid.dim()) throw InvalidArgument("parameter dimension does not match the grid");
  const double semi = gagliardo_seminorm(v, params.s, GagliardoMode::full());
  const double F2 = 0.5 * semi * semi;
  const double F1 = pairing(v, f);
  return {F2 - F1, F2, F1};
}

std::vector<double> regularity_ratios(Functional which, const GridFunction& v, const GridFunction& f,
                                      const FracParams& params, const Cone& cone, const Cutoff& cut, double gamma,
                                      const std::vector<Vec>& steps) {
  if (steps.empty()) throw InvalidArgument("regularity modulus needs at least one step");
  if (!(gamma > 0.0 && gamma < 2.0)) throw InvalidArgument("gamma must lie in (0, 2)");
  check_pair(v, f);
  for (const auto& h : steps)
    if (!cone.contains(h)) throw InvalidArgument("step lies outside the cone");

  const auto value = [&](const GridFunction& w) {
    if (which == Functional::F1) return pairing(w, f);
    const double semi = gagliardo_seminorm(w, params.s, GagliardoMode::full());
    const double F2 = 0.5 * semi * semi;
    return which == Functional::F2 ? F2 : F2 - pairing(w, f);
  };
  const double base = value(v);
  std::vector<double> out;
  for (const auto& h : steps) {
    const GridFunction th = localized_translate(v, cut, h);
    out.push_back(std::abs(value(th) - base) / std::pow(norm(h), gamma));
  }
  return out;
}

double regularity_modulus(Functional which, const GridFunction& v, const GridFunction& f, const FracParams& params,
                          const Cone& cone, const Cutoff& cut, double gamma, const std::vector<Vec>& steps) {
  const auto r = regularity_ratios(which, v, f, params, cone, cut, gamma, steps);
  double m = 0.0;
  for (double x : r) m = std::max(m, x);
  return m;
}

}  // namespace fraclap
