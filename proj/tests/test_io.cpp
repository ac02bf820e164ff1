#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "fraclap/errors.hpp"
#include "fraclap/fracop.hpp"
#include "fraclap/io.hpp"

using namespace fraclap;

TEST_CASE("grid function json round trip") {
  const Grid g = Grid::box({-1.5}, 3.0, 96);
  const auto u = sample(getoor_solution(1, 0.3, 1), g, Domain::intervals({{-1, -0.25}, {0.25, 1}}));
  const auto back = grid_function_from_json(to_json(u));
  CHECK(back.grid == u.grid);
  CHECK(back.values == u.values);
  CHECK(back.domain == u.domain);
  CHECK(back.meta == u.meta);

  const auto path = (std::filesystem::temp_directory_path() / "fraclap_io_test.json").string();
  write_json(path, {{"solution", to_json(u)}});
  CHECK(read_grid_function(path).values == u.values);
  write_json(path, to_json(u));
  CHECK(read_grid_function(path).values == u.values);
  std::remove(path.c_str());

  const Grid g2 = Grid::box({-1.0, -1.0}, 2.0, 8);
  const auto b = sample(Descriptor::parse("bump"), g2, Domain::ball({0.0, 0.0}, 1.0));
  const auto b2 = grid_function_from_json(to_json(b));
  CHECK(b2.domain == b.domain);
  CHECK(!b2.meta.s.has_value());

  json bad = to_json(u);
  bad["values"].erase(0);
  CHECK_THROWS_AS(grid_function_from_json(bad), InvalidArgument);
  CHECK_THROWS_AS(read_grid_function("/nonexistent/x.json"), InvalidArgument);
}

TEST_CASE("report json keys") {
  const json j = to_json(SolveReport{1.0, 1.0, 0.0, 0.5, 10.0});
  for (const char* k : {"energy", "load_pairing", "stability_gap", "l2", "cond_est"}) CHECK(j.contains(k));
}

TEST_CASE("flag parsing") {
  const auto d = parse_domain("-1,-0.2;0.2,1");
  REQUIRE(d.pieces().size() == 2);
  CHECK(d.pieces()[1].a == 0.2);
  const auto b = parse_domain("ball:0,0;1.5");
  CHECK(b.kind() == Domain::Kind::ball);
  CHECK(b.radius() == 1.5);
  CHECK_THROWS_AS(parse_domain("1"), InvalidArgument);
  CHECK_THROWS_AS(parse_domain("a,b"), InvalidArgument);

  const auto r = parse_grid_list("0.1:1.9:0.1");
  REQUIRE(r.size() == 19);
  CHECK(r[2] == 0.3);
  CHECK(r.back() == 1.9);
  CHECK(parse_grid_list("0.25,0.5,0.75") == std::vector<double>{0.25, 0.5, 0.75});
  CHECK(parse_grid_list("").empty());
  CHECK_THROWS_AS(parse_grid_list("1:0:0.1"), InvalidArgument);
  CHECK_THROWS_AS(parse_grid_list("0.1,x"), InvalidArgument);
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(fmt(std::nan("")) == "nan");
}

TEST_CASE("csv layouts") {
  std::ostringstream a, b, c, d, e;
  ModulusProfile p;
  p.rows.push_back({0.5, {0.5}, 0.25, "R^d"});
  write_modulus_csv(a, p);
  CHECK(a.str() == "order,h,omega,restriction\n2,0.5,0.25,R^d\n");
  KProfile kp;
  kp.ts = {1.0};
  kp.ks = {0.5};
  write_kprofile_csv(b, kp);
  CHECK(b.str() == "t,K\n1,0.5\n");
  write_ratio_csv(c, {{"x", 1.0, 2.0, 0.5}});
  CHECK(c.str() == "name,lhs,rhs,ratio\nx,1,2,0.5\n");
  write_sweep_csv(d, {{0.25, 0.75, 0.7, 0.8, 1.0, 0.5, false, 2.0, ""}});
  CHECK(d.str() == "s,sigma_star,ci_low,ci_high,r2,predicted,open_endpoint,R\n0.25,0.75,0.69999999999999996,"
                   "0.80000000000000004,1,0.5,false,2\n");
  RateEstimate est{1.0, 1.0, 1.0, 1.0, {}};
  for (int k = 0; k < 5; ++k) est.rows.push_back({std::ldexp(1.0, k - 6), {}, std::ldexp(1.0, k - 6), "R^d"});
  write_rate_csv(e, est, {0.5, 1.5});
  CHECK(e.str().rfind("sigma,verdict,sigma_star,ci_low,ci_high,r2\n0.5,bounded,", 0) == 0);
  CHECK(e.str().find("1.5,growing,") != std::string::npos);
}

TEST_CASE("sweep config") {
  const auto cfg = sweep_config_from_json(json::parse(R"({"s": "0.25:0.75:0.25", "n": 256, "f": "const:2", "domain": "-1,1"})"));
  CHECK(cfg.s == std::vector<double>{0.25, 0.5, 0.75});
  CHECK(cfg.n == 256);
  CHECK(cfg.f == "const:2");
  const auto c2 = sweep_config_from_json(json::parse(R"({"s": [0.3], "domain": {"kind": "interval_union", "intervals": [[0, 1]]}})"));
  CHECK(c2.domain == Domain::interval(0, 1));
  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"steps": 3})")), InvalidArgument);
}
