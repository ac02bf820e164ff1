#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "fraclap/besov.hpp"
#include "fraclap/grid.hpp"
#include "fraclap/harness.hpp"
#include "fraclap/solver1d.hpp"

namespace fraclap {

using nlohmann::json;

json to_json(const Domain& d);
Domain domain_from_json(const json& j);
json to_json(const Grid& g);
Grid grid_from_json(const json& j);
json to_json(const GridFunction& v);
GridFunction grid_function_from_json(const json& j);
json to_json(const SolveReport& r);

GridFunction read_grid_function(const std::string& path);
void write_json(const std::string& path, const json& j);

// "a,b" or "a,b;c,d;..." for interval unions, "ball:c0,c1,...;r" for balls.
Domain parse_domain(const std::string& text);
// "x" or "x,y,z" lists, or "lo:hi:step" ranges (inclusive, rounded to the step).
std::vector<double> parse_grid_list(const std::string& text);

std::string fmt(double x);

void write_modulus_csv(std::ostream& os, const ModulusProfile& p);
void write_rate_csv(std::ostream& os, const RateEstimate& est, const std::vector<double>& sigmas);
void write_kprofile_csv(std::ostream& os, const KProfile& kp);
void write_ratio_csv(std::ostream& os, const std::vector<RatioReport>& rows);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

SweepConfig sweep_config_from_json(const json& j);

}  // namespace fraclap
