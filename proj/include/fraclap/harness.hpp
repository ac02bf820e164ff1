#pragma once

#include <string>
#include <vector>

#include "fraclap/descriptor.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

struct RateEstimate {
  double sigma_star;
  double ci_low;
  double ci_high;
  double r2;
  std::vector<ModulusRow> rows;  // all rows, increasing h

  // "growing" iff omega(h) / h^sigma increases strictly as h runs down the 4 smallest steps.
  std::string verdict(double sigma) const;
};

// Least squares slope of log omega against log h over the smallest decade of steps.
RateEstimate estimate_index(const ModulusProfile& profile);

// Second-difference profile on dyadic steps 4 spacings .. h_max along axis 0. Zero-extended
// functions are measured on R^d, others on Omega_|h|.
ModulusProfile index_profile(const GridFunction& v, double h_max);

struct DataClass {
  enum class Kind { l2, rough, intermediate };
  Kind kind = Kind::l2;
  double theta = 0.0;  // intermediate only
  double q = 2.0;

  static DataClass l2() { return {}; }
  static DataClass rough() { return {Kind::rough, 0.0, 1.0}; }
  static DataClass intermediate(double theta, double q) { return {Kind::intermediate, theta, q}; }
};

struct PredictedIndex {
  double value;
  bool open_endpoint;
  DataClass data_class;
};

PredictedIndex predicted_index(double s, const DataClass& dc);

enum class BootstrapVariant { l2, rough };
std::vector<double> bootstrap_sequence(double s, BootstrapVariant variant, std::size_t n);

struct SweepConfig {
  std::vector<double> s;
  std::size_t n = 512;
  std::string f = "const:1";
  Domain domain = Domain::interval(-1.0, 1.0);
};

struct SweepRow {
  double s;
  double sigma_star;
  double ci_low;
  double ci_high;
  double r2;
  double predicted;
  bool open_endpoint;
  double R;
  std::string error;  // empty on success
};

std::vector<SweepRow> sweep_s(const SweepConfig& cfg);

}  // namespace fraclap
