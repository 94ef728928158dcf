#include "hplane/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "hplane/error.hpp"
#include "hplane/moebius.hpp"
#include "hplane/numerics.hpp"

namespace hplane {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Label { Zero, Pole };

struct Component {
  std::optional<ExtPoint> c;  // empty for the full circle
  std::optional<ExtPoint> d;
  std::vector<std::pair<ExtPoint, Label>> pts;

  [[nodiscard]] bool cyclic() const { return !c.has_value(); }
};

bool in_open_arc(ExtPoint c, ExtPoint d, ExtPoint x) {
  if (x == c || x == d) return false;
  if (c < d) return c < x && x < d;
  return x > c || x < d;
}

std::vector<Component> components(const InterpProblem& p) {
  std::vector<std::pair<ExtPoint, Label>> all;
  for (const auto& a : p.zeros) all.emplace_back(a, Label::Zero);
  for (const auto& b : p.poles) all.emplace_back(b, Label::Pole);
  std::ranges::sort(all, {}, &std::pair<ExtPoint, Label>::first);

  std::vector<ExtPoint> ys = p.singular;
  std::ranges::sort(ys);
  if (ys.empty()) return {Component{std::nullopt, std::nullopt, all}};

  std::vector<Component> out;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    Component comp{ys[k], ys[(k + 1) % ys.size()], {}};
    for (const auto& e : all) {
      if (in_open_arc(*comp.c, *comp.d, e.first)) comp.pts.push_back(e);
    }
    // circular order starting just after c
    const ExtPoint c = *comp.c;
    std::ranges::sort(comp.pts, [c](const auto& x, const auto& y) {
      const int gx = x.first > c ? 0 : 1;
      const int gy = y.first > c ? 0 : 1;
      if (gx != gy) return gx < gy;
      return x.first < y.first;
    });
    out.push_back(std::move(comp));
  }
  return out;
}

std::string describe(const Component& comp) {
  if (comp.cyclic()) return "the full circle";
  return "component (" + comp.c->str() + ", " + comp.d->str() + ")";
}

bool contains_point(const std::vector<ExtPoint>& v, ExtPoint x) { return std::ranges::find(v, x) != v.end(); }

double scale_of(ExtPoint x) { return x.is_inf() ? 1.0 : std::max(1.0, std::abs(x.value())); }

bool arcsets_close(const ArcSet& x, const ArcSet& y, double tol) {
  const auto ax = x.arcs();
  const auto ay = y.arcs();
  if (ax.size() != ay.size()) return false;
  auto close = [tol](ExtPoint u, ExtPoint v) {
    if (u.is_inf() || v.is_inf()) return u == v;
    return std::abs(u.value() - v.value()) <= tol * std::max(1.0, std::abs(u.value()));
  };
  for (std::size_t k = 0; k < ax.size(); ++k) {
    if (ax[k].kind() != ay[k].kind()) return false;
    if (!ax[k].is_proper()) continue;
    if (!close(ax[k].left(), ay[k].left()) || !close(ax[k].right(), ay[k].right())) return false;
  }
  return true;
}

}  // namespace

void InterpProblem::validate() const {
  std::set<ExtPoint> seen;
  for (const auto* v : {&zeros, &poles, &singular}) {
    for (const auto& x : *v) {
      if (!seen.insert(x).second) throw InputError("interp: point " + x.str() + " is repeated or shared between A, B, Y");
    }
  }
}

// ---------------------------------------------------------------- interlacing

InterlacingResult check_interlacing(const InterpProblem& p) {
  p.validate();
  for (const auto& comp : components(p)) {
    const auto& pts = comp.pts;
    const std::size_t n = pts.size();
    auto fail = [&](std::size_t i, std::size_t j) {
      InterlacingWitness w{pts[i].first, pts[j].first, pts[i].second == Label::Zero, comp.c, comp.d, {}};
      std::ostringstream os;
      if (i == j) {
        os << "unpaired " << (w.zeros ? "zero " : "pole ") << w.first << " on " << describe(comp);
      } else {
        os << (w.zeros ? "zeros " : "poles ") << w.first << " and " << w.second << " have no "
           << (w.zeros ? "pole" : "zero") << " between them on " << describe(comp);
      }
      w.message = os.str();
      return InterlacingResult{false, std::move(w)};
    };
    if (comp.cyclic()) {
      if (n == 1) return fail(0, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (pts[i].second == pts[(i + 1) % n].second) return fail(i, (i + 1) % n);
      }
    } else {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (pts[i].second == pts[i + 1].second) return fail(i, i + 1);
      }
    }
  }
  return {};
}

ArcSet sweep_arcs(const InterpProblem& p) {
  p.validate();
  std::vector<Arc> arcs;
  for (const auto& comp : components(p)) {
    const auto& pts = comp.pts;
    const std::size_t n = pts.size();
    if (comp.cyclic()) {
      for (std::size_t i = 0; i < n && n > 1; ++i) {
        const std::size_t j = (i + 1) % n;
        if (pts[i].second == Label::Pole && pts[j].second == Label::Zero) arcs.emplace_back(pts[i].first, pts[j].first);
      }
      continue;
    }
    std::size_t i = 0;
    if (n > 0 && pts[0].second == Label::Zero) {
      arcs.emplace_back(*comp.c, pts[0].first);  // loner zero
      i = 1;
    }
    while (i < n) {
      if (pts[i].second == Label::Zero) {
        ++i;
        continue;
      }
      if (i + 1 < n && pts[i + 1].second == Label::Zero) {
        arcs.emplace_back(pts[i].first, pts[i + 1].first);
        i += 2;
      } else {
        if (i + 1 == n) arcs.emplace_back(pts[i].first, *comp.d);  // loner pole
        ++i;
      }
    }
  }
  return regularize(ArcSet::normalize(arcs));
}

ArcSet construct_O(const InterpProblem& p) {
  const auto il = check_interlacing(p);
  if (!il.ok) throw InputError("interp: interlacing fails: " + il.witness->message);
  return sweep_arcs(p);
}

bool satisfies_condition2(const InterpProblem& p, const ArcSet& O) {
  if (!is_regular(O)) return false;
  const auto rights = boundary_right(O);
  const auto lefts = boundary_left(O);
  for (const auto& a : p.zeros) {
    if (!contains_point(rights, a)) return false;
  }
  for (const auto& b : p.poles) {
    if (!contains_point(lefts, b)) return false;
  }
  for (const auto& r : rights) {
    if (!contains_point(p.zeros, r) && !contains_point(p.singular, r)) return false;
  }
  for (const auto& l : lefts) {
    if (!contains_point(p.poles, l) && !contains_point(p.singular, l)) return false;
  }
  return true;
}

std::optional<ArcSet> search_condition2(const InterpProblem& p) {
  p.validate();
  if (p.zeros.size() + p.poles.size() + p.singular.size() > 10)
    throw InputError("interp: exhaustive search is limited to 10 points");
  if (p.zeros.empty() && p.poles.empty()) return ArcSet();

  std::vector<ExtPoint> rights = p.zeros;
  rights.insert(rights.end(), p.singular.begin(), p.singular.end());
  std::vector<ExtPoint> lefts = p.poles;
  lefts.insert(lefts.end(), p.singular.begin(), p.singular.end());

  std::vector<Arc> chosen;
  std::set<ExtPoint> used;
  ArcSet current;
  std::optional<ArcSet> found;

  // Each right endpoint candidate either takes one unused left endpoint or,
  // for points of Y only, stays unused.
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (found) return;
    if (k == rights.size()) {
      const ArcSet O = ArcSet::normalize(chosen);
      if (satisfies_condition2(p, O)) found = O;
      return;
    }
    const ExtPoint a = rights[k];
    const bool optional = k >= p.zeros.size();
    if (optional) rec(k + 1);
    if (used.contains(a)) return;
    for (const auto& b : lefts) {
      if (b == a || used.contains(b)) continue;
      const Arc J(b, a);
      const ArcSet single(J);
      if (!intersect(current, single).empty()) continue;
      const ArcSet saved = current;
      chosen.push_back(J);
      used.insert(a);
      used.insert(b);
      current = unite(current, single);
      rec(k + 1);
      current = saved;
      used.erase(a);
      used.erase(b);
      chosen.pop_back();
      if (found) return;
    }
  };
  rec(0);
  return found;
}

// ---------------------------------------------------------------- synthesis

bool InterpSolution::ok() const { return all_ok(certs); }

InterpSolution build_function(const InterpProblem& p) {
  const ArcSet O = construct_O(p);
  InterpSolution sol{O, PickFunction::composite(1.0, KreinProduct(O)), {}, {}, {}};
  const PickFunction& f = sol.f;

  // condition (1): exact local orders at the prescribed points
  {
    std::ostringstream bad;
    const auto st = k_structure(O);
    for (const auto& a : p.zeros) {
      if (!f.eval_local(a).is_zero()) bad << " A:" << a;
    }
    for (const auto& b : p.poles) {
      if (!f.eval_local(b).is_pole()) bad << " B:" << b;
    }
    for (const auto& z : st.zeros) {
      if (!contains_point(p.zeros, z) && !contains_point(p.singular, z)) bad << " zero:" << z;
    }
    for (const auto& q : st.poles) {
      if (!contains_point(p.poles, q) && !contains_point(p.singular, q)) bad << " pole:" << q;
    }
    const std::string d = bad.str();
    sol.certs.push_back(make_cert("condition1", d.empty() ? 0.0 : 1.0, 0.0, d.empty() ? "" : "violations" + d));
  }

  // zeros approached from above
  {
    double worst = 0.0;
    for (const auto& a : p.zeros) {
      const cplx z = a.is_inf() ? cplx(0, 1e14) : cplx(a.value(), 1e-14 * scale_of(a));
      worst = std::max(worst, std::abs(f.eval(z)));
    }
    sol.certs.push_back(make_cert("zeros", worst, 1e-10, "max |f(a + i eta)|"));
  }

  // poles: simple order, sign change of 1/f, residue seen from both sides
  {
    double worst = 0.0;
    double smallest = kInf;
    std::ostringstream bad;
    for (const auto& b : p.poles) {
      const LocalValue lv = f.eval_local(b);
      double fp = 0.0, fm = 0.0, rp = 0.0, rm = 0.0;
      if (b.is_inf()) {
        const double X = 1e6;
        fp = f.eval_local(X).real();
        fm = f.eval_local(-X).real();
        rp = fp / X;
        rm = -fm / X;
      } else {
        const double d = 1e-6 * scale_of(b);
        fp = f.eval_local(b.value() + d).real();
        fm = f.eval_local(b.value() - d).real();
        rp = fp * d;
        rm = -fm * d;
      }
      smallest = std::min({smallest, std::abs(fp), std::abs(fm)});
      const double mis = std::max(std::abs(rp - lv.coef), std::abs(rm - lv.coef)) / std::abs(lv.coef);
      if (lv.order != -1 || !(fp * fm < 0)) {
        bad << " " << b;
        worst = kInf;
      }
      worst = std::max(worst, mis);
    }
    std::ostringstream d;
    d << "relative residue mismatch; min |f(b +- delta)| = " << smallest;
    if (!bad.str().empty()) d << "; not simple poles:" << bad.str();
    sol.certs.push_back(make_cert("poles", worst, 1e-3, d.str()));
  }

  // real and analytic off B ∪ Y
  {
    std::vector<ExtPoint> special = p.zeros;
    special.insert(special.end(), p.poles.begin(), p.poles.end());
    special.insert(special.end(), p.singular.begin(), p.singular.end());
    std::vector<double> fin;
    for (const auto& x : special) {
      if (x.is_finite()) fin.push_back(x.value());
    }
    std::ranges::sort(fin);
    double R = 10.0;
    for (double x : fin) R = std::max(R, 2 * std::abs(x) + 1);

    std::vector<double> xs;
    for (std::size_t k = 0; k + 1 < fin.size(); ++k) xs.push_back(0.5 * (fin[k] + fin[k + 1]));
    for (int k = 1; k <= 100; ++k) xs.push_back(-R + 2 * R * radical_inverse(k, 2));

    std::vector<ExtPoint> excluded = p.poles;
    excluded.insert(excluded.end(), p.singular.begin(), p.singular.end());
    double worst = 0.0;
    int used = 0;
    for (double x : xs) {
      const bool near = std::ranges::any_of(excluded, [x](ExtPoint e) {
        return e.is_finite() && std::abs(e.value() - x) < 1e-3 * scale_of(e);
      });
      if (near) continue;
      const LocalValue lv = f.eval_local(x);
      if (lv.is_pole()) {
        worst = kInf;
        continue;
      }
      const double v = lv.real();
      const cplx w = f.eval(cplx(x, 1e-10 * std::max(1.0, std::abs(x))));
      worst = std::max(worst, std::abs(w - v) / (1 + std::abs(v)));
      ++used;
    }
    sol.certs.push_back(make_cert("real_analytic", worst, 1e-6, std::to_string(used) + " sample points"));
  }

  for (const auto& y : p.singular) {
    const LocalValue lv = f.eval_local(y);
    if (lv.is_pole()) sol.poles_at_singular.push_back(y);
    if (lv.is_zero()) sol.zeros_at_singular.push_back(y);
  }
  return sol;
}

// ---------------------------------------------------------------- realizability

bool Realizability::ok() const { return subset && regular && omega && f.has_value() && all_ok(certs); }

Realizability realizable_pair(const ArcSet& omega, const ArcSet& O) {
  if (omega.empty()) throw InputError("realizable: Omega must be nonempty");
  Realizability out;
  const ArcSet omega1 = regularize(omega);
  const auto X = boundary_left(O);
  out.subset = O.is_subset_of(omega);
  out.regular = is_regular(O);
  out.omega = omega1.without_points(X) == omega;
  if (!(out.subset && out.regular && out.omega)) return out;

  std::vector<PsiPiece> pieces;
  for (const auto& s : omega1.complement().intervals()) pieces.push_back({s.lo, s.hi, 0.5});
  std::optional<ExpRep> v;
  if (!pieces.empty()) v = ExpRep(0.0, pieces);
  const PickFunction f = PickFunction::composite(1.0, KreinProduct(O), v);
  out.f = f;

  out.certs.push_back(make_cert("omega", f.omega() == omega ? 0.0 : 1.0, 0.0, "Omega(f) against Omega"));
  const auto g = find_gamma([&f](ExtPoint x) { return f.eval_local(x); }, f.omega());
  std::ostringstream os;
  os << "numerical Gamma " << g.gamma;
  out.certs.push_back(make_cert("gamma", arcsets_close(g.gamma, O, 1e-9) ? 0.0 : 1.0, 0.0, os.str()));
  out.certs.push_back(make_cert("imag", std::max(0.0, -min_imag_on_grid(f)), 1e-12, "min Im f on the grid"));
  return out;
}

// ---------------------------------------------------------------- disk

bool DiskSolution::ok() const { return all_ok(certs); }

DiskSolution disk_interpolate(const DiskProblem& dp) {
  const CayleyMap C(dp.zeta);
  const DiskTargetMap m(dp.alpha, dp.beta);
  DiskSolution sol;
  auto pull = [&C](const std::vector<cplx>& ws) {
    std::vector<ExtPoint> out;
    for (const auto& w : ws) out.push_back(C.inverse_boundary(w));
    return out;
  };
  sol.pulled = {pull(dp.zeros), pull(dp.poles), pull(dp.singular)};
  sol.O = construct_O(sol.pulled);
  const PickFunction f = PickFunction::composite(1.0, KreinProduct(sol.O));

  sol.theta = [C, m, f](cplx w) -> cplx {
    const double r = std::abs(w);
    if (r > 1 + 1e-12) throw InputError("disk: point outside the closed unit disk");
    if (std::abs(r - 1) <= 1e-12) return m(f.eval_local(C.inverse_boundary(w / r)).value());
    return m(f.eval(C.inverse(w)));
  };
  const auto& theta = sol.theta;

  std::vector<cplx> interior{std::polar(0.5, kPi / 3)};
  for (double r : {0.0, 0.25, 0.5, 0.75, 0.95}) {
    for (int k = 0; k < 20; ++k) interior.push_back(std::polar(r, 2 * kPi * (k + 0.5) / 20));
  }
  if (sol.O.empty()) {
    const cplx t0 = theta(0.0);
    double worst = std::abs(std::abs(t0) - 1);
    for (const auto& w : interior) worst = std::max(worst, std::abs(theta(w) - t0));
    sol.certs.push_back(make_cert("constant_unimodular", worst, 1e-12));
  } else {
    double worst = 0.0;
    for (const auto& w : interior) worst = std::max(worst, std::abs(theta(w)));
    sol.certs.push_back(make_cert("interior", worst, 1 - 1e-12, "max |theta| on interior samples"));
  }

  std::vector<cplx> marked = dp.zeros;
  marked.insert(marked.end(), dp.poles.begin(), dp.poles.end());
  double worst_mod = 0.0, worst_radial = 0.0;
  for (int k = 0; k < 200; ++k) {
    const cplx w = std::polar(1.0, 2 * kPi * (k + 0.5) / 200);
    const auto dist = [w](const cplx& u) { return std::abs(u - w); };
    if (std::ranges::any_of(dp.singular, [&](const cplx& u) { return dist(u) < 1e-6; })) continue;
    worst_mod = std::max(worst_mod, std::abs(std::abs(theta(w)) - 1));
    if (std::ranges::any_of(marked, [&](const cplx& u) { return dist(u) < 1e-3; })) continue;
    if (std::ranges::any_of(dp.singular, [&](const cplx& u) { return dist(u) < 1e-3; })) continue;
    worst_radial = std::max(worst_radial, std::abs(theta((1 - 1e-9) * w) - theta(w)));
  }
  sol.certs.push_back(make_cert("boundary_modulus", worst_mod, 1e-8));
  sol.certs.push_back(make_cert("boundary_radial_limit", worst_radial, 1e-5));

  double wa = 0.0, wb = 0.0;
  for (const auto& a : dp.zeros) wa = std::max(wa, std::abs(theta(a) - dp.alpha));
  for (const auto& b : dp.poles) wb = std::max(wb, std::abs(theta(b) - dp.beta));
  sol.certs.push_back(make_cert("theta_at_A", wa, 1e-8));
  sol.certs.push_back(make_cert("theta_at_B", wb, 1e-8));
  return sol;
}

// ---------------------------------------------------------------- random problems

namespace {

std::vector<ExtPoint> random_points(std::mt19937& rng, int n) {
  std::vector<int> pool(121);
  for (int k = 0; k < 121; ++k) pool[k] = k - 60;
  std::ranges::shuffle(pool, rng);
  std::vector<ExtPoint> out;
  for (int k = 0; k < n && k < 121; ++k) out.emplace_back(0.5 * pool[k]);
  if (std::uniform_int_distribution<int>(0, 4)(rng) == 0 && !out.empty()) out.back() = ExtPoint::infinity();
  std::ranges::sort(out);
  return out;
}

}  // namespace

InterpProblem random_problem(std::mt19937& rng, int max_points, int max_singular) {
  const int n = std::uniform_int_distribution<int>(0, max_points)(rng);
  const auto pts = random_points(rng, n);
  InterpProblem p;
  int ny = 0;
  for (const auto& x : pts) {
    int label = std::uniform_int_distribution<int>(0, 2)(rng);
    if (label == 2 && ny >= max_singular) label = std::uniform_int_distribution<int>(0, 1)(rng);
    if (label == 0) p.zeros.push_back(x);
    else if (label == 1) p.poles.push_back(x);
    else {
      p.singular.push_back(x);
      ++ny;
    }
  }
  return p;
}

InterpProblem random_interlaced_problem(std::mt19937& rng, int max_each, int max_singular) {
  for (;;) {
    const int ny = std::uniform_int_distribution<int>(0, max_singular)(rng);
    int len = std::uniform_int_distribution<int>(0, 2 * max_each)(rng);
    if (ny == 0) len -= len % 2;
    auto pts = random_points(rng, ny + len);
    const int n = static_cast<int>(pts.size());

    std::vector<int> idx(n);
    for (int k = 0; k < n; ++k) idx[k] = k;
    std::ranges::shuffle(idx, rng);
    std::vector<bool> is_y(n, false);
    for (int k = 0; k < ny && k < n; ++k) is_y[idx[k]] = true;

    InterpProblem p;
    int start = 0;
    if (ny > 0) {
      while (!is_y[start]) ++start;
    }
    std::bernoulli_distribution coin(0.5);
    bool zero_next = coin(rng);
    for (int s = 0; s < n; ++s) {
      const int k = (start + s) % n;
      if (is_y[k]) {
        p.singular.push_back(pts[k]);
        zero_next = coin(rng);
        continue;
      }
      (zero_next ? p.zeros : p.poles).push_back(pts[k]);
      zero_next = !zero_next;
    }
    if (static_cast<int>(p.zeros.size()) <= max_each && static_cast<int>(p.poles.size()) <= max_each) return p;
  }
}

}  // namespace hplane
