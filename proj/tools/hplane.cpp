#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hplane/cli.hpp"
#include "hplane/error.hpp"

namespace {

using hplane::cli::json;

constexpr int kExitOk = 0;
constexpr int kExitCertification = 1;
constexpr int kExitInput = 2;

json read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hplane::InputError("cannot open spec " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw hplane::InputError(std::string("spec is not valid JSON: ") + e.what());
  }
}

std::vector<double> parse_ladder(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size() || !(out.back() > 0)) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw hplane::InputError("--eps: bad value \"" + tok + "\"");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pick functions on the upper half-plane: evaluation, factorization, interpolation"};
  app.require_subcommand(1);

  std::string spec_path, out_path, format = "json", grid, eps, suite;
  std::optional<int> depth;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  bool timing = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "JSON spec file")->required();
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--grid", grid, "a:b:n, box:re1:re2:im1:im2:n or pt:re:im");
    sub->add_option("--eps", eps, "comma separated epsilon ladder for boundary values");
    sub->add_option("--depth", depth, "Cantor depth");
    sub->add_option("--tol", tol, "tolerance override");
    sub->add_option("--seed", seed, "seed for random instances");
    sub->add_option("--count", count, "number of random instances");
    sub->add_flag("--timing", timing, "add wall time to the report");
  };
  auto* eval = app.add_subcommand("eval", "evaluate a function on a grid");
  auto* factor = app.add_subcommand("factor", "f = k_Gamma(f) g with verified posts");
  auto* check = app.add_subcommand("check", "run an invariant suite");
  auto* solve = app.add_subcommand("solve", "interpolation, realizability, Boole and Letac problems");
  for (auto* s : {eval, factor, check, solve}) common(s);
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(hplane::cli::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  auto* active = app.get_subcommands().front();
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const json spec = read_spec(spec_path);
    hplane::cli::Options cli_opt;
    std::vector<std::string> given;
    if (active->count("--grid")) {
      cli_opt.grid = grid;
      given.emplace_back("grid");
    }
    if (active->count("--eps")) {
      cli_opt.eps = parse_ladder(eps);
      given.emplace_back("eps");
    }
    if (depth) {
      cli_opt.depth = depth;
      given.emplace_back("depth");
    }
    if (tol) {
      cli_opt.tol = tol;
      given.emplace_back("tol");
    }
    if (seed) {
      cli_opt.seed = *seed;
      given.emplace_back("seed");
    }
    if (count) {
      cli_opt.count = count;
      given.emplace_back("count");
    }
    const auto opt = hplane::cli::merge_options(spec, cli_opt, given);

    hplane::cli::Outcome out;
    const std::string name = active->get_name();
    if (name == "eval") out = hplane::cli::cmd_eval(spec, opt);
    else if (name == "factor") out = hplane::cli::cmd_factor(spec, opt);
    else if (name == "check") out = hplane::cli::cmd_check(spec, suite, opt);
    else out = hplane::cli::cmd_solve(spec, opt);

    if (timing) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out.report["timing_ms"] = ms;
    }

    std::string text;
    if (format == "csv") text = name == "eval" ? hplane::cli::rows_csv(out.rows) : hplane::cli::certs_csv(out.certs);
    else text = out.report.dump(2) + "\n";

    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw hplane::InputError("cannot write " + out_path);
      f << text;
    }
    return out.ok ? kExitOk : kExitCertification;
  } catch (const hplane::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hplane::Error& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kExitCertification;
  }
}
