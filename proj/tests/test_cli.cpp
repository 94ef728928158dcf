#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hplane/cli.hpp"
#include "hplane/error.hpp"

using namespace hplane;
using namespace hplane::cli;

namespace {
json spec(const char* text) { return json::parse(text); }

const Row& only_row(const Outcome& o) {
  REQUIRE(o.rows.size() == 1);
  return o.rows.front();
}
}  // namespace

TEST_CASE("points and arc sets round-trip") {
  CHECK(parse_point(json(2.5)) == ExtPoint(2.5));
  CHECK(parse_point(json("inf")).is_inf());
  CHECK_THROWS_AS(parse_point(json("oops")), InputError);

  const auto set = parse_arcset(json::parse(R"([[1, 2], [3, "inf"], [5, 0.5]])"));
  CHECK(parse_arcset(arcset_json(set)) == set);
  CHECK(parse_arcset(json("full")).is_full());
  CHECK(parse_arcset(json::parse(R"({"arcs": [[1, 2], [3, "inf"]]})")) == parse_arcset(json::parse(R"([[1, 2], [3, "inf"]])")));
  CHECK_THROWS_AS(parse_arcset(json::parse(R"({"arc": []})")), InputError);
  CHECK(parse_arcset(json::parse("[[0, 0]]")) == ArcSet(Arc::punctured(0.0)));
  CHECK_THROWS_AS(parse_arcset(json::parse("[[0, 0], [1, 2]]")), InputError);
}

TEST_CASE("spec validation") {
  CHECK(task_key(spec(R"({"version": 1, "builtin": "z_plus_i"})")) == "builtin");
  CHECK(task_key(spec(R"({"version": 1})")).empty());
  CHECK_THROWS_AS(task_key(spec(R"({"version": 1, "bogus": 1})")), InputError);
  CHECK_THROWS_AS(task_key(spec(R"({"version": 2, "builtin": "z_plus_i"})")), InputError);
  CHECK_THROWS_AS(task_key(spec(R"({"krein": {"arcs": []}, "builtin": "z_plus_i"})")), InputError);
  const Options o;
  CHECK_THROWS_AS(parse_function(spec(R"({"nevanlinna": {"alpha": 1, "gamma": 2}})"), o), InputError);
  CHECK_THROWS_AS(parse_function(spec(R"({"krein": {"arcs": [[0, 1]], "cantor": {}}})"), o), InputError);
  CHECK_THROWS_AS(parse_function(spec(R"({"interp": {"zeros": [0]}})"), o), InputError);
  CHECK_THROWS_AS(parse_function(spec(R"({"product": {"exp": {"psi": [[0, 1, 0.5]]}}})"), o), InputError);
  CHECK_THROWS_AS(parse_function(spec(R"({"nevanlinna": {"ac": [{"interval": [0, 1]}]}})"), o), InputError);
  CHECK_THROWS_AS(merge_options(spec(R"({"options": {"color": "red"}})"), o, {}), InputError);
  CHECK_THROWS_AS(parse_interp(spec(R"({"zeros": [0], "poles": [0]})")), InputError);
}

TEST_CASE("options merge with command line precedence") {
  Options cli;
  cli.grid = "0:1:2";
  const auto s = spec(R"({"options": {"grid": "pt:0:1", "seed": 9, "eps": [0.1, 0.01]}})");
  const auto merged = merge_options(s, cli, {"grid"});
  CHECK(merged.grid == "0:1:2");
  CHECK(merged.seed == 9);
  CHECK(merged.eps.size() == 2);
  CHECK(merge_options(s, cli, {}).grid == "pt:0:1");
}

TEST_CASE("grids") {
  CHECK(parse_grid("0:1:3") == std::vector<cplx>{0.0, 0.5, 1.0});
  CHECK(parse_grid("pt:1:2") == std::vector<cplx>{cplx(1, 2)});
  CHECK(parse_grid("box:0:1:1:2:2").size() == 4);
  CHECK_THROWS_AS(parse_grid("box:0:1:0:2:2"), InputError);
  CHECK_THROWS_AS(parse_grid("0:1"), InputError);
  CHECK_THROWS_AS(parse_grid("0:x:3"), InputError);
}

TEST_CASE("eval examples") {
  Options o;
  o.grid = "0:0:1";
  const auto zi = cmd_eval(spec(R"({"builtin": "z_plus_i"})"), o);
  CHECK(only_row(zi).re_f == 0.0);
  CHECK(only_row(zi).im_f == 1.0);
  CHECK(only_row(zi).flag == "boundary");

  o.grid = "pt:0:1";
  const auto k = cmd_eval(spec(R"({"krein": {"arcs": [[0, 1]]}})"), o);
  CHECK(std::abs(std::abs(cplx(only_row(k).re_f, only_row(k).im_f)) - 1) < 1e-15);

  o.grid = "2:2:1";
  const auto sq = cmd_eval(spec(R"({"builtin": "z_plus_sqrt_z2_minus_1"})"), o);
  CHECK(std::abs(only_row(sq).re_f - (2 + std::sqrt(3.0))) < 1e-14);
  CHECK(only_row(sq).flag == "omega");

  // a density point goes through the ε ladder for products with an exp part
  o.grid = "0.5:0.5:1";
  const auto e = cmd_eval(spec(R"({"product": {"exp": {"gamma": 0, "psi": [{"interval": [0, 1], "value": 0.5}]}}})"), o);
  CHECK(only_row(e).flag == "boundary");
  // e^{h} with ψ = ½ on (0, 1): arg = π/2 inside the piece
  CHECK(std::abs(std::atan2(only_row(e).im_f, only_row(e).re_f) - std::numbers::pi / 2) < 1e-5);

  o.grid = "1:1:1";
  const auto pole = cmd_eval(spec(R"({"nevanlinna": {"atoms": [[1, 1]]}})"), o);
  CHECK(only_row(pole).flag == "pole");
  CHECK(std::isinf(only_row(pole).re_f));
}

TEST_CASE("factor command") {
  const auto r = cmd_factor(spec(R"({"nevanlinna": {"alpha": 1}})"), {});
  CHECK(r.ok);
  CHECK(r.report["results"]["gamma"] == json::parse(R"([["inf", 0.0]])"));
  CHECK(r.report["results"]["constant"].get<double>() == doctest::Approx(1.0));
  CHECK(r.report["results"]["g"]["nevanlinna"]["beta"].get<double>() == doctest::Approx(1.0));

  const auto c = cmd_factor(
      spec(R"({"product": {"c": 2, "krein": {"arcs": [[-1, 0], [2, 3]]}, "exp": {"psi": [{"interval": [4, 5], "value": 0.5}]}}})"), {});
  CHECK(c.ok);
  CHECK(c.report["results"]["gamma"] == json::parse("[[-1.0, 0.0], [2.0, 3.0]]"));
  CHECK(c.report["results"]["g"]["product"]["exp"]["psi"] == json::parse(R"([{"interval": [4.0, 5.0], "value": 0.5}])"));
  for (const auto& cert : c.report["certifications"]) CHECK(cert.contains("tol"));
}

TEST_CASE("check and solve commands") {
  const auto b = cmd_check(spec(R"({"boole": {"atoms": [[-1, 1], [1, 1]], "y": 1}})"), "boole", {});
  CHECK(b.ok);
  const auto k = cmd_check(spec(R"({"krein": {"arcs": [[1, 2], [2, 3]]}})"), "krein-props", {});
  CHECK(k.ok);
  CHECK_THROWS_AS(cmd_check(spec(R"({"boole": {}})"), "letac", {}), InputError);
  CHECK_THROWS_AS(cmd_check(spec("{}"), "nope", {}), InputError);

  const auto s = cmd_solve(spec(R"({"interp": {"zeros": [1], "singular": [0]}})"), {});
  CHECK(s.ok);
  CHECK(s.report["results"]["poles_at_singular"] == json::parse("[0.0]"));

  const auto bad = cmd_solve(spec(R"({"interp": {"zeros": [0, 1], "poles": [5]}})"), {});
  CHECK_FALSE(bad.ok);
  CHECK(bad.report["results"]["interlacing"]["witness"]["first"] == json(0.0));

  const auto d = cmd_solve(
      spec(R"({"interp": {"zeros": [[1, 0]], "poles": [[-1, 0]], "alpha": [-1, 0], "beta": [1, 0], "zeta": [0, 1]}})"), {});
  CHECK(d.ok);
  CHECK_THROWS_AS(cmd_solve(spec(R"({"builtin": "z_plus_i"})"), {}), InputError);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  Options o;
  o.seed = 17;
  o.count = 10;
  const auto a = cmd_check(spec("{}"), "factor-posts", o);
  const auto b = cmd_check(spec("{}"), "factor-posts", o);
  CHECK(a.report.dump() == b.report.dump());
  o.seed = 18;
  const auto c = cmd_check(spec("{}"), "interp-equivalence", o);
  CHECK(c.ok);
}

TEST_CASE("csv output") {
  const std::vector<Row> rows{{0, 0, 1, 0, "omega"}, {1, 0, std::numeric_limits<double>::infinity(), 0, "pole"}};
  CHECK(rows_csv(rows) == "x_or_re_z,im_z,re_f,im_f,flag\n0,0,1,0,omega\n1,0,inf,0,pole\n");
  const std::vector<Certification> certs{{"a, b", true, 0.5, 1, "say \"hi\""}};
  CHECK(certs_csv(certs) == "name,ok,residual,tol,detail\n\"a, b\",true,0.5,1,\"say \"\"hi\"\"\"\n");
}
