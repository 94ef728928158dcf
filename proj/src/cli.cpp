#include "hplane/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "hplane/error.hpp"
#include "hplane/moebius.hpp"
#include "hplane/numerics.hpp"
#include "hplane/suites.hpp"

namespace hplane::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::string> kFunctionKeys{"nevanlinna", "krein", "product", "builtin"};
const std::vector<std::string> kProblemKeys{"interp", "realizable", "boole", "letac"};

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::ranges::none_of(allowed, [&key](const char* a) { return key == a; }))
      throw InputError(where + ": unknown field \"" + key + "\"");
  }
}

double num(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

double num_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? num(j.at(key), where + "." + key) : fallback;
}

std::vector<double> tuple(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) throw InputError(where + ": expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(num(e, where));
  return out;
}

cplx complex_of(const json& j, const std::string& where) {
  const auto v = tuple(j, 2, where);
  return {v[0], v[1]};
}

json number_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json complex_json(cplx z) { return json::array({number_json(z.real()), number_json(z.imag())}); }

std::vector<ExtPoint> points(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of points");
  std::vector<ExtPoint> out;
  for (const auto& e : j) out.push_back(parse_point(e));
  return out;
}

json points_json(const std::vector<ExtPoint>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(point_json(x));
  return out;
}

KreinProduct parse_krein(const json& j, const Options& opt) {
  check_keys(j, {"arcs", "cantor", "tol", "max_factors"}, "krein");
  if (j.contains("arcs") == j.contains("cantor")) throw InputError("krein: give exactly one of arcs, cantor");
  Truncation tr;
  tr.tail_tol = num_or(j, "tol", tr.tail_tol, "krein");
  if (!(tr.tail_tol > 0)) throw InputError("krein.tol must be positive");
  if (j.contains("max_factors")) {
    const double m = num(j.at("max_factors"), "krein.max_factors");
    if (!(m >= 1)) throw InputError("krein.max_factors must be positive");
    tr.max_factors = static_cast<std::size_t>(m);
  }
  if (j.contains("arcs")) return KreinProduct(parse_arcset(j.at("arcs")), tr);
  const auto& c = j.at("cantor");
  check_keys(c, {"interval", "depth", "exterior"}, "krein.cantor");
  CantorComplement cc;
  if (c.contains("interval")) {
    const auto v = tuple(c.at("interval"), 2, "krein.cantor.interval");
    cc.lo = v[0];
    cc.hi = v[1];
  }
  if (!(cc.lo < cc.hi)) throw InputError("krein.cantor.interval: need l < r");
  if (c.contains("depth") && !c.at("depth").is_null()) cc.depth = static_cast<int>(num(c.at("depth"), "krein.cantor.depth"));
  else if (opt.depth) cc.depth = opt.depth;
  if (c.contains("exterior")) {
    if (!c.at("exterior").is_boolean()) throw InputError("krein.cantor.exterior: expected a boolean");
    cc.exterior = c.at("exterior").get<bool>();
  }
  return KreinProduct(cc, tr);
}

json krein_json(const KreinProduct& k) {
  json out = json::object();
  if (k.is_explicit()) {
    out["arcs"] = arcset_json(k.source().explicit_set());
    return out;
  }
  const auto& c = k.source().cantor();
  out["cantor"] = {{"interval", {c.lo, c.hi}}, {"depth", c.depth ? json(*c.depth) : json(nullptr)}, {"exterior", c.exterior}};
  out["tol"] = k.truncation().tail_tol;
  return out;
}

ExpRep parse_exp(const json& j) {
  check_keys(j, {"gamma", "psi"}, "exp");
  std::vector<PsiPiece> pieces;
  if (j.contains("psi")) {
    if (!j.at("psi").is_array()) throw InputError("exp.psi: expected an array");
    for (const auto& p : j.at("psi")) {
      check_keys(p, {"interval", "value"}, "exp.psi");
      const auto v = tuple(p.contains("interval") ? p.at("interval") : json(), 2, "exp.psi.interval");
      if (!p.contains("value")) throw InputError("exp.psi: missing value");
      pieces.push_back({v[0], v[1], num(p.at("value"), "exp.psi.value")});
    }
  }
  return ExpRep(num_or(j, "gamma", 0.0, "exp"), std::move(pieces));
}

json exp_json(const ExpRep& e) {
  json pieces = json::array();
  for (const auto& p : e.pieces()) {
    pieces.push_back({{"interval", {number_json(p.lo), number_json(p.hi)}}, {"value", p.value}});
  }
  return {{"gamma", e.gamma()}, {"psi", pieces}};
}

json measure_json(const Measure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({a.t, a.w});
  json ac = json::array();
  for (const auto& p : m.ac()) ac.push_back({{"interval", {p.lo, p.hi}}, {"density", p.density}});
  return {{"atoms", atoms}, {"ac", ac}};
}

const json* single_task(const json& spec, std::string& key) {
  key = task_key(spec);
  return key.empty() ? nullptr : &spec.at(key);
}

double opt_tol(const Options& opt, double fallback) { return opt.tol.value_or(fallback); }

Certification bool_cert(std::string name, bool ok, std::string detail = {}) {
  return make_cert(std::move(name), ok ? 0.0 : 1.0, 0.0, std::move(detail));
}

json interlacing_json(const InterlacingResult& il) {
  json out = {{"ok", il.ok}};
  if (il.witness) {
    const auto& w = *il.witness;
    out["witness"] = {{"first", point_json(w.first)},
                      {"second", point_json(w.second)},
                      {"kind", w.zeros ? "zeros" : "poles"},
                      {"component", w.c ? json::array({point_json(*w.c), point_json(*w.d)}) : json("full circle")},
                      {"message", w.message}};
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- spec pieces

ExtPoint parse_point(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "-inf" || s == "∞") return ExtPoint::infinity();
  }
  throw InputError("point: expected a number or \"inf\"");
}

json point_json(ExtPoint x) { return x.is_inf() ? json("inf") : json(x.value()); }

ArcSet parse_arcset(const json& j) {
  if (j.is_object()) {
    check_keys(j, {"arcs"}, "arcset");
    if (!j.contains("arcs")) throw InputError("arcset: missing arcs");
    return parse_arcset(j.at("arcs"));
  }
  if (j.is_string() && j.get<std::string>() == "full") return ArcSet::full();
  if (!j.is_array()) throw InputError("arcs: expected \"full\" or an array of [b, a] pairs");
  std::vector<Arc> arcs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw InputError("arcs: each arc is a pair [b, a]");
    const ExtPoint b = parse_point(e[0]);
    const ExtPoint a = parse_point(e[1]);
    if (b == a) {
      if (j.size() != 1) throw InputError("arcs: a punctured circle [p, p] must stand alone");
      return ArcSet(Arc::punctured(b));
    }
    arcs.emplace_back(b, a);
  }
  return ArcSet::normalize(arcs);
}

json arcset_json(const ArcSet& set) {
  if (set.is_full()) return "full";
  json out = json::array();
  for (const auto& a : set.arcs()) out.push_back({point_json(a.left()), point_json(a.right())});
  return out;
}

Measure parse_measure(const json& j, std::optional<int> depth) {
  std::vector<Atom> atoms;
  std::vector<DensityPiece> ac;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw InputError("atoms: expected an array");
    for (const auto& a : j.at("atoms")) {
      const auto v = tuple(a, 2, "atoms");
      atoms.push_back({v[0], v[1]});
    }
  }
  if (j.contains("ac")) {
    if (!j.at("ac").is_array()) throw InputError("ac: expected an array");
    for (const auto& p : j.at("ac")) {
      check_keys(p, {"interval", "density"}, "ac");
      const auto v = tuple(p.contains("interval") ? p.at("interval") : json(), 2, "ac.interval");
      if (!p.contains("density")) throw InputError("ac: missing density");
      ac.push_back({v[0], v[1], num(p.at("density"), "ac.density")});
    }
  }
  std::optional<int> cantor;
  if (j.contains("cantor_depth")) cantor = static_cast<int>(num(j.at("cantor_depth"), "cantor_depth"));
  else if (j.contains("cantor") && j.at("cantor").get<bool>()) cantor = depth.value_or(10);
  return Measure(std::move(atoms), std::move(ac), cantor);
}

std::string task_key(const json& spec) {
  if (!spec.is_object()) throw InputError("spec: expected a JSON object");
  std::string found;
  for (const auto& [key, _] : spec.items()) {
    if (key == "version" || key == "options") continue;
    const bool known = std::ranges::find(kFunctionKeys, key) != kFunctionKeys.end() ||
                       std::ranges::find(kProblemKeys, key) != kProblemKeys.end();
    if (!known) throw InputError("spec: unknown field \"" + key + "\"");
    if (!found.empty()) throw InputError("spec: more than one task (" + found + ", " + key + ")");
    found = key;
  }
  if (spec.contains("version") && !(spec.at("version").is_number_integer() && spec.at("version").get<int>() == 1))
    throw InputError("spec: unsupported version");
  return found;
}

PickFunction parse_function(const json& spec, const Options& opt) {
  std::string key;
  const json* t = single_task(spec, key);
  if (!t || std::ranges::find(kFunctionKeys, key) == kFunctionKeys.end())
    throw InputError("spec: expected a function (nevanlinna, krein, product or builtin)");
  if (key == "builtin") {
    if (!t->is_string()) throw InputError("builtin: expected a name");
    return builtin_black_box(t->get<std::string>());
  }
  if (key == "nevanlinna") {
    check_keys(*t, {"alpha", "beta", "atoms", "ac", "cantor_depth", "cantor"}, "nevanlinna");
    return PickFunction::rep(NevanlinnaRep(num_or(*t, "alpha", 0.0, "nevanlinna"), num_or(*t, "beta", 0.0, "nevanlinna"),
                                           parse_measure(*t, opt.depth)));
  }
  if (key == "krein") return PickFunction::composite(1.0, parse_krein(*t, opt));
  check_keys(*t, {"c", "krein", "exp"}, "product");
  const double c = num_or(*t, "c", 1.0, "product");
  const KreinProduct k = t->contains("krein") ? parse_krein(t->at("krein"), opt) : KreinProduct(ArcSet());
  std::optional<ExpRep> e;
  if (t->contains("exp")) e = parse_exp(t->at("exp"));
  return PickFunction::composite(c, k, e);
}

json function_json(const PickFunction& f) {
  return std::visit(
      [](const auto& form) -> json {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, PickFunction::Rep>) {
          json out = {{"alpha", form.rep.alpha()}, {"beta", form.rep.beta()}};
          const auto m = measure_json(form.rep.rho());
          out["atoms"] = m["atoms"];
          out["ac"] = m["ac"];
          return {{"nevanlinna", out}};
        } else if constexpr (std::is_same_v<T, PickFunction::Composite>) {
          json out = {{"c", form.c}, {"krein", krein_json(form.k)}};
          if (form.exp) out["exp"] = exp_json(*form.exp);
          return {{"product", out}};
        } else if constexpr (std::is_same_v<T, PickFunction::Quotient>) {
          return {{"quotient", {{"base", function_json(*form.base)}, {"removed", arcset_json(form.removed)}}}};
        } else {
          return {{"builtin", form.name}};
        }
      },
      f.form());
}

InterpProblem parse_interp(const json& j) {
  check_keys(j, {"zeros", "poles", "singular"}, "interp");
  InterpProblem p;
  if (j.contains("zeros")) p.zeros = points(j.at("zeros"), "interp.zeros");
  if (j.contains("poles")) p.poles = points(j.at("poles"), "interp.poles");
  if (j.contains("singular")) p.singular = points(j.at("singular"), "interp.singular");
  p.validate();
  return p;
}

Options merge_options(const json& spec, const Options& cli, const std::vector<std::string>& cli_set) {
  Options out = cli;
  if (!spec.is_object() || !spec.contains("options")) return out;
  const auto& o = spec.at("options");
  check_keys(o, {"grid", "eps", "depth", "tol", "seed", "count"}, "options");
  auto given = [&cli_set](const char* name) { return std::ranges::find(cli_set, name) != cli_set.end(); };
  if (o.contains("grid") && !given("grid")) {
    if (!o.at("grid").is_string()) throw InputError("options.grid: expected a string");
    out.grid = o.at("grid").get<std::string>();
  }
  if (o.contains("eps") && !given("eps")) {
    out.eps.clear();
    if (!o.at("eps").is_array()) throw InputError("options.eps: expected an array");
    for (const auto& e : o.at("eps")) out.eps.push_back(num(e, "options.eps"));
  }
  if (o.contains("depth") && !given("depth")) out.depth = static_cast<int>(num(o.at("depth"), "options.depth"));
  if (o.contains("tol") && !given("tol")) out.tol = num(o.at("tol"), "options.tol");
  if (o.contains("seed") && !given("seed")) {
    if (!o.at("seed").is_number_unsigned()) throw InputError("options.seed: expected a non-negative integer");
    out.seed = o.at("seed").get<std::uint64_t>();
  }
  if (o.contains("count") && !given("count")) out.count = static_cast<int>(num(o.at("count"), "options.count"));
  return out;
}

std::vector<cplx> parse_grid(const std::string& grid) {
  std::vector<std::string> parts;
  std::stringstream ss(grid);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  auto d = [&grid](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw InputError("");
      return v;
    } catch (const std::exception&) {
      throw InputError("grid \"" + grid + "\": bad number \"" + s + "\"");
    }
  };
  auto count = [&](const std::string& s) {
    const double n = d(s);
    if (!(n >= 1) || n != std::floor(n) || n > 1e6) throw InputError("grid \"" + grid + "\": bad count");
    return static_cast<int>(n);
  };
  std::vector<cplx> out;
  if (parts.size() == 3 && parts[0] == "pt") {
    out.emplace_back(d(parts[1]), d(parts[2]));
  } else if (parts.size() == 3) {
    const double a = d(parts[0]), b = d(parts[1]);
    const int n = count(parts[2]);
    for (int k = 0; k < n; ++k) out.emplace_back(n == 1 ? a : a + (b - a) * k / (n - 1), 0.0);
  } else if (parts.size() == 6 && parts[0] == "box") {
    const double r1 = d(parts[1]), r2 = d(parts[2]), i1 = d(parts[3]), i2 = d(parts[4]);
    const int n = count(parts[5]);
    if (!(i1 > 0 && i2 >= i1)) throw InputError("grid: box needs 0 < im1 <= im2");
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double re = n == 1 ? r1 : r1 + (r2 - r1) * a / (n - 1);
        const double im = n == 1 ? i1 : i1 + (i2 - i1) * b / (n - 1);
        out.emplace_back(re, im);
      }
    }
  } else {
    throw InputError("grid \"" + grid + "\": expected a:b:n, box:re1:re2:im1:im2:n or pt:re:im");
  }
  return out;
}

json certs_json(const std::vector<Certification>& certs) {
  json out = json::array();
  for (const auto& c : certs) {
    json e = {{"name", c.name}, {"ok", c.ok}, {"residual", number_json(c.residual)}, {"tol", number_json(c.tol)}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    out.push_back(e);
  }
  return out;
}

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json rows_json(const std::vector<Row>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"x_or_re_z", r.x_or_re_z},
                   {"im_z", r.im_z},
                   {"re_f", number_json(r.re_f)},
                   {"im_f", number_json(r.im_f)},
                   {"flag", r.flag}});
  }
  return out;
}

Outcome finish(std::string command, const json& spec, json results, std::vector<Certification> certs) {
  Outcome o;
  o.ok = all_ok(certs);
  o.report = {{"command", std::move(command)}, {"task", spec}, {"results", std::move(results)},
              {"certifications", certs_json(certs)}, {"ok", o.ok}};
  o.certs = std::move(certs);
  return o;
}

// Boundary value at a point of σ.
Row boundary_row(const PickFunction& f, double x, const Options& opt) {
  if (std::holds_alternative<PickFunction::BlackBox>(f.form())) {
    const cplx v = std::get<PickFunction::BlackBox>(f.form()).f(cplx(x, 0.0));
    if (is_infinite(v)) return {x, 0.0, kInf, 0.0, "pole"};
    return {x, 0.0, v.real(), v.imag(), "boundary"};
  }
  if (const auto* r = std::get_if<PickFunction::Rep>(&f.form())) {
    try {
      const cplx v = r->rep.eval(cplx(x, 0.0));
      if (is_infinite(v)) {
        const auto& atoms = r->rep.rho().atoms();
        const bool atom = std::ranges::any_of(atoms, [x](const Atom& a) { return a.t == x; });
        return {x, 0.0, kInf, 0.0, atom ? "pole" : "singular"};
      }
      return {x, 0.0, v.real(), v.imag(), "boundary"};
    } catch (const InputError&) {
      // density endpoint: fall through to the ladder
    }
  }
  if (opt.eps.size() == 1) {
    const cplx v = f.eval(cplx(x, opt.eps[0]));
    return {x, 0.0, v.real(), v.imag(), "eps"};
  }
  const auto ladder = opt.eps.empty() ? default_eps_ladder() : opt.eps;
  std::vector<double> re, im;
  for (double e : ladder) {
    const cplx v = f.eval(cplx(x, e));
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  const cplx last(re.back(), im.back());
  if (std::abs(last) > 1e8) return {x, 0.0, kInf, 0.0, "singular"};
  const auto er = extrapolate_to_zero(ladder, re);
  const auto ei = extrapolate_to_zero(ladder, im);
  const cplx v(er.value, ei.value);
  const bool conv = std::max(er.error, ei.error) <= 1e-6 * (1 + std::abs(v));
  return {x, 0.0, v.real(), v.imag(), conv ? "boundary" : "boundary_unconverged"};
}

}  // namespace

std::string rows_csv(const std::vector<Row>& rows) {
  std::string out = "x_or_re_z,im_z,re_f,im_f,flag\n";
  for (const auto& r : rows) {
    out += fmt(r.x_or_re_z) + "," + fmt(r.im_z) + "," + fmt(r.re_f) + "," + fmt(r.im_f) + "," + r.flag + "\n";
  }
  return out;
}

std::string certs_csv(const std::vector<Certification>& certs) {
  std::string out = "name,ok,residual,tol,detail\n";
  for (const auto& c : certs) {
    out += csv_field(c.name) + "," + (c.ok ? "true" : "false") + "," + fmt(c.residual) + "," + fmt(c.tol) + "," +
           csv_field(c.detail) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------- commands

Outcome cmd_eval(const json& spec, const Options& opt) {
  const PickFunction f = parse_function(spec, opt);
  std::optional<ClosedSet> sigma;
  try {
    sigma = f.sigma();
  } catch (const InputError&) {
    // generator products: real points go through the ladder
  }
  const auto* comp = std::get_if<PickFunction::Composite>(&f.form());
  const bool generator = comp && !comp->k.is_explicit();

  std::vector<Row> rows;
  double tail = 0.0;
  for (const auto& z : parse_grid(opt.grid)) {
    if (z.imag() > 0) {
      const cplx v = f.eval(z);
      if (generator) tail = std::max(tail, comp->k.eval(z).tail_bound);
      rows.push_back({z.real(), z.imag(), v.real(), v.imag(), "interior"});
      continue;
    }
    if (z.imag() < 0) throw InputError("eval: grid points must have Im z >= 0");
    const double x = z.real();
    if (sigma && !sigma->contains(x)) {
      const LocalValue lv = f.eval_local(x);
      if (lv.is_pole()) rows.push_back({x, 0.0, kInf, 0.0, "pole"});
      else rows.push_back({x, 0.0, lv.real(), 0.0, "omega"});
      continue;
    }
    rows.push_back(boundary_row(f, x, opt));
  }
  json results = {{"function", function_json(f)}, {"rows", rows_json(rows)}};
  if (sigma) results["sigma"] = json::array();
  if (sigma) {
    for (const auto& p : sigma->pieces()) results["sigma"].push_back({number_json(p.lo), number_json(p.hi)});
    if (sigma->contains_inf()) results["sigma"].push_back("inf");
  }
  if (generator) results["max_tail_bound"] = tail;
  Outcome o = finish("eval", spec, results, {});
  o.rows = std::move(rows);
  return o;
}

Outcome cmd_factor(const json& spec, const Options& opt) {
  const PickFunction f = parse_function(spec, opt);
  const auto fac = factorize(f, false);
  std::vector<Certification> certs;
  for (const auto& p : fac.posts) {
    Certification c;
    c.name = p.name;
    c.ok = p.ok;
    c.detail = p.detail;
    if (p.name == "f = k g") {
      c.residual = p.residual;
      c.tol = 1e-9;
    } else if (p.name == "g in class H") {
      c.residual = std::max(0.0, -p.residual);
      c.tol = 1e-12;
      c.detail = "max(0, -min Im g) on the certification grid";
    } else if (p.name == "g > 0 on Omega(g)") {
      c.residual = p.ok ? 0.0 : 1.0;
      std::ostringstream os;
      os << "min g on samples = " << p.residual;
      if (!p.detail.empty()) os << "; " << p.detail;
      c.detail = os.str();
    } else {
      c.residual = p.ok ? 0.0 : 1.0;
    }
    certs.push_back(c);
  }
  json results = {{"gamma", arcset_json(fac.gamma)}, {"k", {{"krein", {{"arcs", arcset_json(fac.gamma)}}}}},
                  {"g", function_json(fac.g)}};
  bool measure_zero = false;
  try {
    measure_zero = f.sigma().measure() == 0;
  } catch (const InputError&) {
  }
  if (measure_zero) {
    const auto cf = constant_factor_check(f, opt_tol(opt, 1e-9));
    results["constant"] = cf.c;
    Certification c = make_cert("f = c k_Gamma(f)", cf.residual, opt_tol(opt, 1e-9));
    c.ok = cf.ok;
    certs.push_back(c);
  }
  return finish("factor", spec, results, std::move(certs));
}

Outcome cmd_check(const json& spec, const std::string& suite, const Options& opt) {
  if (std::ranges::find(suite_names(), suite) == suite_names().end()) throw InputError("check: unknown suite " + suite);
  std::string key;
  const json* t = single_task(spec, key);
  auto require = [&](std::initializer_list<const char*> keys) {
    if (key.empty()) return;
    if (std::ranges::none_of(keys, [&key](const char* k) { return key == k; }))
      throw InputError("check " + suite + ": spec task \"" + key + "\" does not apply");
  };
  std::vector<Certification> certs;
  const int count = opt.count.value_or(0);
  if (suite == "krein-props") {
    require({"krein"});
    ArcSet O = ArcSet::normalize({Arc(1, 2), Arc(2, 3)});
    if (t) {
      const auto k = parse_krein(*t, opt);
      if (!k.is_explicit()) throw InputError("krein-props: needs explicit arcs");
      O = k.source().explicit_set();
    }
    certs = suite_krein_props(O, opt.seed);
  } else if (suite == "nevanlinna-roundtrip") {
    require({"nevanlinna"});
    std::optional<NevanlinnaRep> rep;
    if (t) rep = std::get<PickFunction::Rep>(parse_function(spec, opt).form()).rep;
    certs = suite_nevanlinna_roundtrip(rep, opt.seed, count ? count : 20, opt_tol(opt, 1e-6));
  } else if (suite == "boole") {
    require({"boole"});
    Measure mu({{-1, 1}, {1, 1}});
    std::vector<double> ys{1.0};
    if (t) {
      check_keys(*t, {"atoms", "ac", "cantor_depth", "y"}, "boole");
      mu = parse_measure(*t, opt.depth);
      if (t->contains("y")) {
        ys.clear();
        const auto& y = t->at("y");
        if (y.is_array()) {
          for (const auto& e : y) ys.push_back(num(e, "boole.y"));
        } else {
          ys.push_back(num(y, "boole.y"));
        }
      }
    }
    certs = suite_boole(mu, ys, opt_tol(opt, 1e-8));
  } else if (suite == "letac") {
    require({"letac"});
    std::optional<NevanlinnaRep> rep;
    std::optional<std::pair<double, double>> cd;
    if (t) {
      check_keys(*t, {"nevanlinna", "c", "d"}, "letac");
      rep = std::get<PickFunction::Rep>(parse_function({{"nevanlinna", t->at("nevanlinna")}}, opt).form()).rep;
      cd = std::pair{num_or(*t, "c", -1.0, "letac"), num_or(*t, "d", 1.0, "letac")};
    }
    certs = suite_letac(rep, cd, opt.seed, count ? count : 50, opt_tol(opt, 1e-8));
  } else if (suite == "factor-posts") {
    require({"nevanlinna", "krein", "product", "builtin"});
    std::optional<PickFunction> f;
    if (t) f = parse_function(spec, opt);
    certs = suite_factor_posts(f, opt.seed, count ? count : 20);
  } else {
    require({"interp"});
    std::optional<InterpProblem> p;
    if (t) p = parse_interp(*t);
    certs = suite_interp_equivalence(p, opt.seed, count ? count : 100);
  }
  return finish("check", spec, {{"suite", suite}, {"seed", opt.seed}}, std::move(certs));
}

Outcome cmd_solve(const json& spec, const Options& opt) {
  std::string key;
  const json* t = single_task(spec, key);
  if (!t || std::ranges::find(kProblemKeys, key) == kProblemKeys.end())
    throw InputError("solve: expected a problem (interp, realizable, boole or letac)");

  if (key == "interp" && (t->contains("alpha") || t->contains("beta") || t->contains("zeta"))) {
    check_keys(*t, {"zeros", "poles", "singular", "alpha", "beta", "zeta"}, "interp (disk)");
    DiskProblem dp;
    auto circle = [&](const char* k) {
      std::vector<cplx> out;
      if (!t->contains(k)) return out;
      if (!t->at(k).is_array()) throw InputError(std::string("interp.") + k + ": expected an array of [re, im]");
      for (const auto& e : t->at(k)) out.push_back(complex_of(e, std::string("interp.") + k));
      return out;
    };
    dp.zeros = circle("zeros");
    dp.poles = circle("poles");
    dp.singular = circle("singular");
    if (t->contains("alpha")) dp.alpha = complex_of(t->at("alpha"), "interp.alpha");
    if (t->contains("beta")) dp.beta = complex_of(t->at("beta"), "interp.beta");
    if (t->contains("zeta")) dp.zeta = complex_of(t->at("zeta"), "interp.zeta");
    const CayleyMap C(dp.zeta);
    InterpProblem pulled;
    for (const auto& w : dp.zeros) pulled.zeros.push_back(C.inverse_boundary(w));
    for (const auto& w : dp.poles) pulled.poles.push_back(C.inverse_boundary(w));
    for (const auto& w : dp.singular) pulled.singular.push_back(C.inverse_boundary(w));
    const auto il = check_interlacing(pulled);
    if (!il.ok) {
      return finish("solve", spec, {{"interlacing", interlacing_json(il)}},
                    {bool_cert("interlacing", false, il.witness->message)});
    }
    const auto sol = disk_interpolate(dp);
    json samples = json::array();
    for (const cplx w : {cplx(0, 0), std::polar(0.5, std::numbers::pi / 3)}) {
      samples.push_back({{"w", complex_json(w)}, {"theta", complex_json(sol.theta(w))}});
    }
    json results = {{"interlacing", interlacing_json(il)},
                    {"pulled_back", {{"zeros", points_json(sol.pulled.zeros)},
                                     {"poles", points_json(sol.pulled.poles)},
                                     {"singular", points_json(sol.pulled.singular)}}},
                    {"O", arcset_json(sol.O)},
                    {"function", function_json(PickFunction::composite(1.0, KreinProduct(sol.O)))},
                    {"disk_map", {{"alpha", complex_json(dp.alpha)}, {"beta", complex_json(dp.beta)},
                                  {"zeta", complex_json(dp.zeta)}}},
                    {"theta_samples", samples}};
    std::vector<Certification> certs{bool_cert("interlacing", true)};
    certs.insert(certs.end(), sol.certs.begin(), sol.certs.end());
    return finish("solve", spec, results, std::move(certs));
  }

  if (key == "interp") {
    const InterpProblem p = parse_interp(*t);
    const auto il = check_interlacing(p);
    if (!il.ok) {
      return finish("solve", spec, {{"interlacing", interlacing_json(il)}},
                    {bool_cert("interlacing", false, il.witness->message)});
    }
    const auto sol = build_function(p);
    json results = {{"interlacing", interlacing_json(il)},
                    {"O", arcset_json(sol.O)},
                    {"function", function_json(sol.f)},
                    {"poles_at_singular", points_json(sol.poles_at_singular)},
                    {"zeros_at_singular", points_json(sol.zeros_at_singular)}};
    std::vector<Certification> certs{bool_cert("interlacing", true),
                                     bool_cert("condition2", satisfies_condition2(p, sol.O))};
    certs.insert(certs.end(), sol.certs.begin(), sol.certs.end());
    return finish("solve", spec, results, std::move(certs));
  }

  if (key == "realizable") {
    check_keys(*t, {"omega", "O"}, "realizable");
    if (!t->contains("omega") || !t->contains("O")) throw InputError("realizable: needs omega and O");
    const auto r = realizable_pair(parse_arcset(t->at("omega")), parse_arcset(t->at("O")));
    json results = {{"subset", r.subset}, {"regular", r.regular}, {"omega_condition", r.omega}};
    if (r.f) results["function"] = function_json(*r.f);
    std::vector<Certification> certs{bool_cert("(a) O in Omega", r.subset), bool_cert("(b) O regular", r.regular),
                                     bool_cert("(c) Omega = Omega1 minus X", r.omega)};
    certs.insert(certs.end(), r.certs.begin(), r.certs.end());
    return finish("solve", spec, results, std::move(certs));
  }

  if (key == "boole") {
    check_keys(*t, {"atoms", "ac", "cantor_depth", "y"}, "boole");
    const Measure mu = parse_measure(*t, opt.depth);
    const double y = num_or(*t, "y", 1.0, "boole");
    const auto r = boole_superlevel_measure(mu, y);
    json results = {{"mass", mu.total_mass()}, {"y", y}, {"plus", r.plus}, {"minus", r.minus},
                    {"plus_roots", r.plus_roots}, {"minus_roots", r.minus_roots}};
    return finish("solve", spec, results, suite_boole(mu, {y}, opt_tol(opt, 1e-8)));
  }

  check_keys(*t, {"nevanlinna", "c", "d"}, "letac");
  if (!t->contains("nevanlinna")) throw InputError("letac: needs nevanlinna");
  const auto f = parse_function({{"nevanlinna", t->at("nevanlinna")}}, opt);
  const auto& rep = std::get<PickFunction::Rep>(f.form()).rep;
  const double c = num_or(*t, "c", -1.0, "letac"), d = num_or(*t, "d", 1.0, "letac");
  if (!(c < d)) throw InputError("letac: need c < d");
  const auto r = letac_pushforward_check(rep, c, d);
  json branches = json::array();
  for (const auto& [lo, hi] : r.branches) branches.push_back({lo, hi});
  json results = {{"length", r.length}, {"expected", d - c}, {"branches", branches}};
  return finish("solve", spec, results,
                {make_cert("preimage length = d - c", std::abs(r.length - (d - c)), opt_tol(opt, 1e-8))});
}

}  // namespace hplane::cli
