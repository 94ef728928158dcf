#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hplane/cert.hpp"
#include "hplane/factor.hpp"
#include "hplane/interp.hpp"

namespace hplane::cli {

using json = nlohmann::ordered_json;

/// Options from the spec's "options" object, overridden by command-line flags.
struct Options {
  std::string grid = "-5:5:11";
  std::vector<double> eps;  // empty: extrapolate over the default ladder
  std::optional<int> depth;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::optional<int> count;
  bool timing = false;
};

// Spec pieces. All throw InputError on malformed input or unknown fields.
ExtPoint parse_point(const json& j);
json point_json(ExtPoint x);
ArcSet parse_arcset(const json& j);
json arcset_json(const ArcSet& set);
Measure parse_measure(const json& j, std::optional<int> depth);
PickFunction parse_function(const json& spec, const Options& opt);
json function_json(const PickFunction& f);
InterpProblem parse_interp(const json& j);

/// Merges spec["options"] into opt; command-line values win when set.
Options merge_options(const json& spec, const Options& cli, const std::vector<std::string>& cli_set);

/// One of the function or problem keys of a spec; exactly one must be set.
std::string task_key(const json& spec);

struct Row {
  double x_or_re_z = 0.0;
  double im_z = 0.0;
  double re_f = 0.0;
  double im_f = 0.0;
  std::string flag;
};

/// Grid points from "a:b:n", "box:re1:re2:im1:im2:n" or "pt:re:im".
std::vector<cplx> parse_grid(const std::string& grid);

struct Outcome {
  json report;
  std::vector<Row> rows;  // eval only
  std::vector<Certification> certs;
  bool ok = true;
};

Outcome cmd_eval(const json& spec, const Options& opt);
Outcome cmd_factor(const json& spec, const Options& opt);
Outcome cmd_check(const json& spec, const std::string& suite, const Options& opt);
Outcome cmd_solve(const json& spec, const Options& opt);

json certs_json(const std::vector<Certification>& certs);
std::string rows_csv(const std::vector<Row>& rows);
std::string certs_csv(const std::vector<Certification>& certs);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"krein-props", "nevanlinna-roundtrip", "boole",
                                              "letac",       "factor-posts",         "interp-equivalence"};
  return names;
}

}  // namespace hplane::cli
