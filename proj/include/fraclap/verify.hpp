#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fraclap {

struct CheckRow {
  std::string suite;
  std::string name;
  double value;
  double bound;
  bool pass;
};

struct SuiteOptions {
  std::vector<double> s = {0.25, 0.5, 0.75};
  std::optional<double> tol;  // suite default when empty
  unsigned long seed = 20240611;
};

// Suites: getoor, cone-identity, marchaud, k-functional, equivalence.
std::vector<CheckRow> run_suite(const std::string& name, const SuiteOptions& opt);
const std::vector<std::string>& suite_names();

// interpolation norm / (L2 norm + difference-quotient seminorm) of f sampled on (0,1) with n cells.
double equivalence_ratio(double (*f)(double), std::size_t n, double sigma);

void write_check_table(std::ostream& os, const std::vector<CheckRow>& rows);

}  // namespace fraclap
