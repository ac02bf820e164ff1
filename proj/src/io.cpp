#include "fraclap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fraclap/errors.hpp"

namespace fraclap {

json to_json(const Domain& d) {
  if (d.kind() == Domain::Kind::ball) return {{"kind", "ball"}, {"center", d.center()}, {"radius", d.radius()}};
  json iv = json::array();
  for (const auto& p : d.pieces()) iv.push_back({p.a, p.b});
  return {{"kind", "interval_union"}, {"intervals", iv}};
}

Domain domain_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ball") return Domain::ball(j.at("center").get<Vec>(), j.at("radius").get<double>());
  if (kind != "interval_union") throw InvalidArgument("unknown domain kind: " + kind);
  std::vector<Interval> pieces;
  for (const auto& p : j.at("intervals")) pieces.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return Domain::intervals(pieces);
}

json to_json(const Grid& g) { return {{"origin", g.origin}, {"spacing", g.spacing}, {"shape", g.shape}}; }

Grid grid_from_json(const json& j) {
  return Grid(j.at("origin").get<Vec>(), j.at("spacing").get<double>(), j.at("shape").get<std::vector<std::size_t>>());
}

json to_json(const GridFunction& v) {
  json meta = {{"source", v.meta.source}, {"zero_extended", v.meta.zero_extended}};
  meta["s"] = v.meta.s ? json(*v.meta.s) : json(nullptr);
  return {{"grid", to_json(v.grid)}, {"values", v.values}, {"domain", to_json(v.domain)}, {"meta", meta}};
}

GridFunction grid_function_from_json(const json& j) {
  GridFunction v;
  v.grid = grid_from_json(j.at("grid"));
  v.values = j.at("values").get<std::vector<double>>();
  if (v.values.size() != v.grid.size()) throw InvalidArgument("value count does not match the grid shape");
  v.domain = domain_from_json(j.at("domain"));
  if (j.contains("meta")) {
    const auto& m = j["meta"];
    if (m.contains("s") && !m["s"].is_null()) v.meta.s = m["s"].get<double>();
    v.meta.source = m.value("source", "");
    v.meta.zero_extended = m.value("zero_extended", false);
  }
  return v;
}

json to_json(const SolveReport& r) {
  return {{"energy", r.energy},
          {"load_pairing", r.load_pairing},
          {"stability_gap", r.stability_gap},
          {"l2", r.l2},
          {"cond_est", r.cond_est}};
}

GridFunction read_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  // Accept either a bare GridFunction or a solve output with a "solution" member.
  return grid_function_from_json(j.contains("solution") ? j["solution"] : j);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(1) << "\n";
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return x;
}

}  // namespace

Domain parse_domain(const std::string& text) {
  if (text.rfind("ball:", 0) == 0) {
    const auto parts = split(text.substr(5), ';');
    if (parts.size() != 2) throw InvalidArgument("ball domain is ball:c0,...;r");
    Vec c;
    for (const auto& x : split(parts[0], ',')) c.push_back(to_double(x));
    return Domain::ball(c, to_double(parts[1]));
  }
  std::vector<Interval> pieces;
  for (const auto& iv : split(text, ';')) {
    const auto ab = split(iv, ',');
    if (ab.size() != 2) throw InvalidArgument("interval is written a,b");
    pieces.push_back({to_double(ab[0]), to_double(ab[1])});
  }
  if (pieces.empty()) throw InvalidArgument("empty domain");
  return Domain::intervals(pieces);
}

std::vector<double> parse_grid_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string::npos) {
    const auto p = split(text, ':');
    if (p.size() != 3) throw InvalidArgument("range is lo:hi:step");
    const double lo = to_double(p[0]), hi = to_double(p[1]), st = to_double(p[2]);
    if (!(st > 0.0) || hi < lo) throw InvalidArgument("range needs lo <= hi and step > 0");
    const auto n = static_cast<long>(std::floor((hi - lo) / st + 1e-9));
    for (long k = 0; k <= n; ++k) {
      // Round to the decimal resolution of the step so 0.1:1.9:0.1 gives 0.3, not 0.30000000000000004.
      const double x = lo + static_cast<double>(k) * st;
      out.push_back(std::round(x * 1e12) / 1e12);
    }
    return out;
  }
  for (const auto& x : split(text, ',')) out.push_back(to_double(x));
  return out;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_modulus_csv(std::ostream& os, const ModulusProfile& p) {
  os << "order,h,omega,restriction\n";
  for (const auto& r : p.rows) os << p.order << "," << fmt(r.h) << "," << fmt(r.omega) << "," << r.restriction << "\n";
}

void write_rate_csv(std::ostream& os, const RateEstimate& est, const std::vector<double>& sigmas) {
  os << "sigma,verdict,sigma_star,ci_low,ci_high,r2\n";
  for (double s : sigmas)
    os << fmt(s) << "," << est.verdict(s) << "," << fmt(est.sigma_star) << "," << fmt(est.ci_low) << ","
       << fmt(est.ci_high) << "," << fmt(est.r2) << "\n";
}

void write_kprofile_csv(std::ostream& os, const KProfile& kp) {
  os << "t,K\n";
  for (std::size_t i = 0; i < kp.ts.size(); ++i) os << fmt(kp.ts[i]) << "," << fmt(kp.ks[i]) << "\n";
}

void write_ratio_csv(std::ostream& os, const std::vector<RatioReport>& rows) {
  os << "name,lhs,rhs,ratio\n";
  for (const auto& r : rows) os << r.name << "," << fmt(r.lhs) << "," << fmt(r.rhs) << "," << fmt(r.ratio) << "\n";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "s,sigma_star,ci_low,ci_high,r2,predicted,open_endpoint,R\n";
  for (const auto& r : rows)
    os << fmt(r.s) << "," << fmt(r.sigma_star) << "," << fmt(r.ci_low) << "," << fmt(r.ci_high) << "," << fmt(r.r2)
       << "," << fmt(r.predicted) << "," << (r.open_endpoint ? "true" : "false") << "," << fmt(r.R) << "\n";
}

SweepConfig sweep_config_from_json(const json& j) {
  static const std::vector<std::string> keys = {"s", "n", "f", "domain"};
  for (const auto& [k, _] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw InvalidArgument("unknown config key: " + k);
  SweepConfig cfg;
  if (j.contains("s")) {
    if (j["s"].is_string())
      cfg.s = parse_grid_list(j["s"].get<std::string>());
    else
      cfg.s = j["s"].get<std::vector<double>>();
  }
  if (j.contains("n")) cfg.n = j["n"].get<std::size_t>();
  if (j.contains("f")) cfg.f = j["f"].get<std::string>();
  if (j.contains("domain")) cfg.domain = j["domain"].is_string() ? parse_domain(j["domain"].get<std::string>())
                                                                 : domain_from_json(j["domain"]);
  return cfg;
}

}  // namespace fraclap
