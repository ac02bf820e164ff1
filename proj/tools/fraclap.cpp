#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "fraclap/errors.hpp"
#include "fraclap/harness.hpp"
#include "fraclap/io.hpp"
#include "fraclap/solver1d.hpp"
#include "fraclap/verify.hpp"

using namespace fraclap;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_manifest(const std::string& out, const std::string& command, const json& inputs,
                    const std::vector<std::string>& outputs) {
  json m = {{"command", command}, {"version", kVersion}, {"inputs", inputs}, {"outputs", outputs}, {"seed", nullptr}};
  if (inputs.contains("seed")) m["seed"] = inputs["seed"];
  write_json(out + ".manifest.json", m);
}

std::string stem(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write " + path);
  return os;
}

int run_solve(double s, const std::string& domain, const std::string& f, std::size_t n, const std::string& out) {
  const Domain dom = parse_domain(domain);
  const Descriptor fd = Descriptor::parse(f);
  const Mesh mesh = Mesh::uniform(dom, n);
  const auto sol = solve_dirichlet(mesh, FracParams(s, 1), fd);
  const std::string report = stem(out) + ".report.json";
  write_json(out, to_json(sol.u));
  write_json(report, to_json(sol.report));
  write_manifest(out, "solve", {{"s", s}, {"domain", to_json(dom)}, {"f", f}, {"n", n}}, {out, report});
  const bool ok = std::abs(sol.report.stability_gap) <= 1e-10 * std::max(1.0, sol.report.energy);
  if (!ok) std::cerr << "solve: stability gap " << sol.report.stability_gap << " exceeds tolerance\n";
  return ok ? 0 : 1;
}

int run_analyze(const std::string& input, const std::string& sigma, double h_max, const std::string& out) {
  const GridFunction v = read_grid_function(input);
  const auto sigmas = parse_grid_list(sigma);
  if (h_max <= 0) {
    const Vec lo = v.domain.lower(), hi = v.domain.upper();
    h_max = 0.25 * (hi[0] - lo[0]);
  }
  const auto profile = index_profile(v, h_max);
  const auto est = estimate_index(profile);
  const std::string mod = stem(out) + ".modulus.csv";
  {
    auto os = open_out(mod);
    write_modulus_csv(os, profile);
  }
  {
    auto os = open_out(out);
    write_rate_csv(os, est, sigmas);
  }
  write_manifest(out, "analyze", {{"input", input}, {"sigma", sigmas}, {"h_max", h_max}}, {out, mod});
  return 0;
}

int run_verify(const std::vector<std::string>& suites, const std::string& s, std::optional<double> tol,
               const std::string& out) {
  SuiteOptions opt;
  if (!s.empty()) opt.s = parse_grid_list(s);
  opt.tol = tol;
  std::vector<CheckRow> rows;
  for (const auto& name : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
      throw UsageError("unknown suite: " + name);
    auto r = run_suite(name, opt);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  write_check_table(std::cout, rows);
  if (!out.empty()) {
    auto os = open_out(out);
    write_check_table(os, rows);
    json in = {{"suites", suites}, {"s", opt.s}, {"seed", opt.seed}};
    in["tol"] = tol ? json(*tol) : json(nullptr);
    write_manifest(out, "verify", in, {out});
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  return ok ? 0 : 1;
}

int run_sweep(const std::string& config, const std::string& s, std::size_t n, const std::string& f,
              const std::string& domain, const std::string& out) {
  SweepConfig cfg;
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) throw UsageError("cannot open " + config);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError(config + ": " + e.what());
    }
    cfg = sweep_config_from_json(j);
  }
  if (!s.empty()) cfg.s = parse_grid_list(s);
  if (n > 0) cfg.n = n;
  if (!f.empty()) cfg.f = f;
  if (!domain.empty()) cfg.domain = parse_domain(domain);
  const auto rows = sweep_s(cfg);
  {
    auto os = open_out(out);
    write_sweep_csv(os, rows);
  }
  write_manifest(out, "sweep", {{"s", cfg.s}, {"n", cfg.n}, {"f", cfg.f}, {"domain", to_json(cfg.domain)}}, {out});
  bool ok = true;
  for (const auto& r : rows)
    if (!r.error.empty()) {
      std::cerr << "sweep: s = " << fmt(r.s) << ": " << r.error << "\n";
      ok = false;
    }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Laplacian regularity experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // subcommands accept --threads anywhere on the line
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (also FRACLAP_THREADS)")->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", kVersion);

  auto* solve = app.add_subcommand("solve", "Solve (-Delta)^s u = f on an interval union, u = 0 outside");
  double s = 0.5;
  std::string domain = "-1,1", f = "const:1", out;
  std::size_t n = 512;
  solve->add_option("--s", s, "Order s in [0.05, 0.95]")->required();
  solve->add_option("--domain", domain, "Intervals a,b;c,d")->capture_default_str();
  solve->add_option("--f", f, "Right-hand side descriptor")->capture_default_str();
  solve->add_option("--n", n, "Cells over the hull of the domain")->capture_default_str();
  solve->add_option("--out", out, "Solution JSON path")->required();

  auto* analyze = app.add_subcommand("analyze", "Measure the smoothness index of a GridFunction");
  std::string input, sigma = "0.1:1.9:0.1";
  double h_max = 0.0;
  analyze->add_option("--input", input, "GridFunction JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("--sigma", sigma, "Verdict indices, list or lo:hi:step")->capture_default_str();
  analyze->add_option("--hmax", h_max, "Largest step (default a quarter of the domain width)");
  analyze->add_option("--out", out, "Rate CSV path")->required();

  auto* verify = app.add_subcommand("verify", "Run named check suites");
  std::vector<std::string> suites;
  std::string slist;
  std::optional<double> tol;
  verify->add_option("--suite", suites, "getoor, cone-identity, marchaud, k-functional, equivalence")
      ->required()
      ->delimiter(',');
  verify->add_option("--s", slist, "Orders for the getoor suite");
  verify->add_option("--tol", tol, "Tolerance override");
  verify->add_option("--out", out, "Also write the table to this CSV");

  auto* sweep = app.add_subcommand("sweep", "Solve and measure over a grid of s");
  std::string config, sweep_s_list, sweep_f, sweep_domain;
  std::size_t sweep_n = 0;
  sweep->add_option("--config", config, "JSON experiment config")->check(CLI::ExistingFile);
  sweep->add_option("--s", sweep_s_list, "Orders, list or lo:hi:step");
  sweep->add_option("--n", sweep_n, "Cells");
  sweep->add_option("--f", sweep_f, "Right-hand side descriptor");
  sweep->add_option("--domain", sweep_domain, "Intervals a,b;c,d");
  sweep->add_option("--out", out, "Sweep CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (threads == 0)
    if (const char* env = std::getenv("FRACLAP_THREADS")) threads = std::atoi(env);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*solve) return run_solve(s, domain, f, n, out);
    if (*analyze) return run_analyze(input, sigma, h_max, out);
    if (*verify) return run_verify(suites, slist, tol, out);
    if (*sweep) return run_sweep(config, sweep_s_list, sweep_n, sweep_f, sweep_domain, out);
  } catch (const UsageError& e) {
    std::cerr << "fraclap: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "fraclap: " << e.what() << "\n";
    return 2;
  } catch (const OutOfRange& e) {
    std::cerr << "fraclap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fraclap: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
