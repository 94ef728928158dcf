#include "hplane/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hplane/error.hpp"
#include "hplane/krein.hpp"
#include "hplane/numerics.hpp"

namespace hplane {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

std::string count_detail(int n, const char* what) {
  std::ostringstream os;
  os << n << " " << what;
  return os.str();
}

}  // namespace

ArcSet random_arcset(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<Arc> arcs;
  for (int k = 0; k < n; ++k) {
    const double x = u(rng), y = u(rng);
    if (x != y) arcs.emplace_back(x, y);
  }
  return ArcSet::normalize(arcs);
}

std::vector<Atom> random_atoms(Rng& rng, int n) {
  std::uniform_real_distribution<double> t(-5, 5), w(0.1, 2);
  std::vector<Atom> atoms;
  while (static_cast<int>(atoms.size()) < n) {
    const double x = t(rng);
    if (std::ranges::any_of(atoms, [x](const Atom& a) { return std::abs(a.t - x) < 0.1; })) continue;
    atoms.push_back({x, w(rng)});
  }
  return atoms;
}

NevanlinnaRep random_atomic_rep(Rng& rng, int max_atoms, std::optional<double> alpha) {
  const int n = std::uniform_int_distribution<int>(1, max_atoms)(rng);
  std::uniform_real_distribution<double> a(0, 2), b(-2, 2);
  const double al = alpha ? *alpha : a(rng);
  const double be = b(rng);
  return NevanlinnaRep(al, be, Measure(random_atoms(rng, n)));
}

HalfPlaneAuto random_automorphism(Rng& rng) {
  std::uniform_real_distribution<double> u(-3, 3);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.1) return {a, b, c, d};
  }
}

// ---------------------------------------------------------------- krein

std::vector<Certification> suite_krein_props(const ArcSet& O, std::uint64_t seed) {
  std::vector<Certification> out;
  const KreinProduct k(O);
  const KreinProduct kr(regularize(O));
  const auto grid = halton_box(100, -5, 5, 0.05, 5);

  double merge = 0.0, angle = 0.0, integral = 0.0;
  for (const auto& z : grid) {
    const cplx v = k(z);
    merge = std::max(merge, rel(kr(z), v));
    angle = std::max(angle, std::abs(std::polar(1.0, std::arg(v)) - std::polar(1.0, angle_subtended(O, z))));
    if (angle_subtended(O, z) > kPi + 1e-12) angle = kInf;
  }
  for (std::size_t j = 0; j < 20; ++j) integral = std::max(integral, rel(k_integral_eval(O, grid[j]), k(grid[j])));
  out.push_back(make_cert("merge: k_O = k_reg(O)", merge, 1e-12, "100 grid points"));

  double unit = 0.0;
  int positive = 0;
  for (const auto& J : O.arcs()) {
    if (!J.is_proper()) continue;
    unit = std::max(unit, std::abs(std::abs(p_eval(J, cplx(0, 1))) - 1));
    for (const auto& x : omega_samples(ArcSet(J), 10)) {
      if (!(p_local(J, x).real() < 0)) ++positive;
    }
  }
  out.push_back(make_cert("|p_J(i)| = 1", unit, 1e-12));
  out.push_back(make_cert("p_J < 0 on J", positive, 0, count_detail(positive, "non-negative samples")));
  out.push_back(make_cert("arg k_O = angle subtended", angle, 1e-10));
  out.push_back(make_cert("integral form = product", integral, 1e-8));

  Rng rng(seed);
  double equi = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto phi = random_automorphism(rng);
    const auto t = equivariance_transport(O, phi);
    const KreinProduct kp(t.set);
    for (const auto& z : halton_box(5, -3, 3, 0.05, 3)) equi = std::max(equi, rel(t.c * k(phi(z)), kp(z)));
  }
  out.push_back(make_cert("equivariance", equi, 1e-10, "10 random automorphisms"));
  return out;
}

// ---------------------------------------------------------------- nevanlinna

std::vector<Certification> suite_nevanlinna_roundtrip(const std::optional<NevanlinnaRep>& rep, std::uint64_t seed,
                                                      int count, double tol) {
  Rng rng(seed);
  std::vector<NevanlinnaRep> reps;
  if (rep) {
    if (!rep->rho().is_atomic()) throw InputError("nevanlinna-roundtrip: the measure must be atomic");
    reps.push_back(*rep);
  } else {
    for (int k = 0; k < count; ++k) reps.push_back(random_atomic_rep(rng, 10));
  }
  double ea = 0.0, eb = 0.0, ew = 0.0;
  for (const auto& r : reps) {
    const Evaluator f = [&r](cplx z) { return r(z); };
    ea = std::max(ea, std::abs(recover_alpha(f) - r.alpha()));
    eb = std::max(eb, std::abs(recover_beta(f) - r.beta()));
    for (const auto& a : r.rho().atoms()) ew = std::max(ew, std::abs(recover_atom(f, a.t) - a.w));
  }
  std::vector<Certification> out;
  const auto n = std::to_string(reps.size()) + " representations";
  out.push_back(make_cert("recover alpha", ea, tol, n));
  out.push_back(make_cert("recover beta", eb, tol, n));
  out.push_back(make_cert("recover atoms", ew, tol, n));

  const Evaluator zi = [](cplx z) { return z + cplx(0, 1); };
  double ed = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double t = -4.5 + k;
    ed = std::max(ed, std::abs(stieltjes_density_limit(zi, t) - 1 / (kPi * (1 + t * t))));
  }
  out.push_back(make_cert("density of z + i", ed, 1e-8, "10 points"));
  return out;
}

// ---------------------------------------------------------------- boole, letac

std::vector<Certification> suite_boole(const Measure& mu, const std::vector<double>& ys, double tol) {
  std::vector<Certification> out;
  for (double y : ys) {
    const auto r = boole_superlevel_measure(mu, y);
    const double expect = mu.total_mass() / y;
    std::ostringstream os;
    os << "y = " << y << ", plus = " << r.plus << ", minus = " << r.minus;
    out.push_back(make_cert("|{G > y}| = mu(R)/y", std::abs(r.plus - expect), tol, os.str()));
    out.push_back(make_cert("|{G < -y}| = mu(R)/y", std::abs(r.minus - expect), tol, os.str()));
  }
  return out;
}

std::vector<Certification> suite_letac(const std::optional<NevanlinnaRep>& rep, std::optional<std::pair<double, double>> cd,
                                       std::uint64_t seed, int count, double tol) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-5, 5);
  double worst = 0.0;
  int n = 0;
  auto run = [&](const NevanlinnaRep& r, double c, double d) {
    if (c > d) std::swap(c, d);
    worst = std::max(worst, std::abs(letac_pushforward_check(r, c, d).length - (d - c)));
    ++n;
  };
  if (rep) {
    const auto [c, d] = cd.value_or(std::pair{-1.0, 1.0});
    run(*rep, c, d);
  } else {
    for (int k = 0; k < count; ++k) {
      const auto r = random_atomic_rep(rng, 8, 1.0);
      run(r, u(rng), u(rng));
    }
  }
  return {make_cert("preimage length = d - c", worst, tol, count_detail(n, "cases"))};
}

// ---------------------------------------------------------------- factor

std::vector<Certification> suite_factor_posts(const std::optional<PickFunction>& f, std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<PickFunction> fs;
  if (f) {
    fs.push_back(*f);
  } else {
    for (int k = 0; k < count; ++k) fs.push_back(PickFunction::rep(random_atomic_rep(rng, 8)));
  }
  std::vector<std::string> names;
  std::vector<double> worst;
  std::vector<int> failures;
  double cres = 0.0;
  int cfail = 0, cn = 0;
  for (const auto& g : fs) {
    const auto fac = factorize(g, false);
    for (const auto& p : fac.posts) {
      auto it = std::ranges::find(names, p.name);
      std::size_t i = it - names.begin();
      if (it == names.end()) {
        names.push_back(p.name);
        worst.push_back(0.0);
        failures.push_back(0);
      }
      if (p.name == "f = k g") worst[i] = std::max(worst[i], p.residual);
      if (!p.ok) ++failures[i];
    }
    bool measure_zero = false;
    try {
      measure_zero = g.sigma().measure() == 0;
    } catch (const InputError&) {
    }
    if (measure_zero) {
      const auto cf = constant_factor_check(g);
      cres = std::max(cres, cf.residual);
      cfail += !cf.ok;
      ++cn;
    }
  }
  std::vector<Certification> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    Certification c = make_cert(names[i], names[i] == "f = k g" ? worst[i] : failures[i], names[i] == "f = k g" ? 1e-9 : 0,
                                count_detail(failures[i], "failures"));
    c.ok = c.ok && failures[i] == 0;
    out.push_back(c);
  }
  if (cn > 0) {
    Certification c = make_cert("f = c k_Gamma(f)", cres, 1e-9, count_detail(cn, "functions"));
    c.ok = c.ok && cfail == 0;
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------- interp

std::vector<Certification> suite_interp_equivalence(const std::optional<InterpProblem>& p, std::uint64_t seed, int count) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::vector<InterpProblem> ps;
  if (p) {
    ps.push_back(*p);
  } else {
    while (static_cast<int>(ps.size()) < count) {
      auto q = ps.size() % 2 ? random_problem(rng, 8, 3) : random_interlaced_problem(rng, 4, 2);
      if (q.zeros.size() + q.poles.size() + q.singular.size() <= 10) ps.push_back(std::move(q));
    }
  }
  int mismatches = 0, interlaced = 0;
  for (const auto& q : ps) {
    const bool three = check_interlacing(q).ok;
    const bool two = search_condition2(q).has_value();
    const bool sweep = satisfies_condition2(q, sweep_arcs(q));
    interlaced += three;
    if (three != two || sweep != two) ++mismatches;
  }
  std::ostringstream os;
  os << ps.size() - mismatches << "/" << ps.size() << " agree, " << interlaced << " interlaced";
  return {make_cert("(2) <=> (3)", mismatches, 0, os.str())};
}

}  // namespace hplane
