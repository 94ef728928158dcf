#include "hplane/factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hplane/error.hpp"

namespace hplane {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;
const cplx kI(0.0, 1.0);

Arc arc_of(double lo, double hi) {
  if (std::isinf(lo) && std::isinf(hi)) return Arc::punctured(ExtPoint::infinity());
  return Arc(ExtPoint(lo), ExtPoint(hi));
}

ClosedSet points_set(const std::vector<ExtPoint>& pts) { return ClosedSet::from_points(pts); }

// Whether f vanishes at a point of Ω(f), judged against the local slope.
bool is_zero_at(const PickFunction& f, ExtPoint a) {
  const auto v = f.eval_local(a);
  if (v.is_zero()) return true;
  if (v.is_pole()) return false;
  if (a.is_inf()) return std::abs(v.coef) <= 1e-10;
  const double x = a.value();
  const double delta = 1e-6 * std::max(1.0, std::abs(x));
  double slope = 1.0;
  try {
    slope = std::abs(f.eval_local(x + delta).real() - f.eval_local(x - delta).real()) / (2 * delta);
  } catch (const Error&) {
  }
  return std::abs(v.coef) <= 1e-10 * std::max(1.0, std::abs(x)) * std::max(1.0, slope);
}

void certify_membership(const PickFunction& g, const char* what) {
  const double m = min_imag_on_grid(g);
  if (!(m >= -1e-12)) {
    std::ostringstream os;
    os << what << ": Im g reaches " << m << " on the certification grid";
    throw CertificationError(os.str());
  }
}

}  // namespace

// ------------------------------------------------------------------ ExpRep

ExpRep::ExpRep(double gamma, std::vector<PsiPiece> pieces) : gamma_(gamma), pieces_(std::move(pieces)) {
  if (!std::isfinite(gamma)) throw InputError("exp: gamma must be finite");
  for (const auto& p : pieces_) {
    if (std::isnan(p.lo) || std::isnan(p.hi) || !(p.lo < p.hi) || p.lo == kInf || p.hi == -kInf)
      throw InputError("exp: piece needs lo < hi");
    if (!(p.value >= 0 && p.value <= 1)) throw InputError("exp: psi must lie in [0, 1]");
  }
  std::ranges::sort(pieces_, {}, &PsiPiece::lo);
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    if (pieces_[k].lo < pieces_[k - 1].hi) throw InputError("exp: psi pieces must be disjoint");
  }
}

bool ExpRep::has_unit_piece() const {
  return std::ranges::any_of(pieces_, [](const PsiPiece& p) { return p.value == 1.0; });
}

ClosedSet ExpRep::support() const {
  std::vector<Span> s;
  bool inf = false;
  for (const auto& p : pieces_) {
    if (p.value == 0.0) continue;
    s.push_back({p.lo, p.hi});
    inf = inf || std::isinf(p.lo) || std::isinf(p.hi);
  }
  return ClosedSet(std::move(s), inf);
}

cplx ExpRep::h(cplx z) const {
  cplx out = gamma_;
  for (const auto& p : pieces_) {
    if (p.value == 0.0) continue;
    const Arc J = arc_of(p.lo, p.hi);
    if (z.imag() > 0) {
      out += p.value * log_p(J, z);
      continue;
    }
    const double x = z.real();
    if (x == p.lo || x == p.hi) throw InputError("exp: h is singular at a piece endpoint");
    const double v = p_eval(J, x).real();
    out += p.value * cplx(std::log(std::abs(v)), v < 0 ? kPi : 0.0);
  }
  return out;
}

double ExpRep::exp_real(ExtPoint x) const {
  if (support().contains(x)) throw InputError("exp: point lies in the support of psi");
  double s = gamma_;
  for (const auto& p : pieces_) {
    if (p.value == 0.0) continue;
    s += p.value * std::log(p_local(arc_of(p.lo, p.hi), x).coef);
  }
  return std::exp(s);
}

ExpValue exp_eval(const ExpRep& e, cplx z) {
  const cplx h = e.h(z);
  return {h, std::exp(h)};
}

// ------------------------------------------------------------ PickFunction

PickFunction PickFunction::rep(NevanlinnaRep rep) { return PickFunction(Rep{std::move(rep)}); }

PickFunction PickFunction::composite(double c, KreinProduct k, std::optional<ExpRep> exp) {
  if (!(c > 0) || !std::isfinite(c)) throw InputError("composite: c must be positive");
  return PickFunction(Composite{c, std::move(k), std::move(exp)});
}

PickFunction PickFunction::quotient(PickFunction base, ArcSet removed) {
  if (removed.empty()) return base;
  if (const auto* q = std::get_if<Quotient>(&base.form_)) {
    auto merged = unite(q->removed, removed);
    return PickFunction(Quotient{q->base, merged, KreinProduct(merged)});
  }
  KreinProduct k(removed);
  return PickFunction(Quotient{std::make_shared<const PickFunction>(std::move(base)), std::move(removed), std::move(k)});
}

PickFunction PickFunction::black_box(Evaluator f, ClosedSet sigma, std::string name) {
  return PickFunction(BlackBox{std::move(f), std::move(sigma), std::move(name)});
}

std::string PickFunction::kind() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rep>) return "rep";
        else if constexpr (std::is_same_v<T, Composite>) return "composite";
        else if constexpr (std::is_same_v<T, Quotient>) return "quotient";
        else return "black_box";
      },
      form_);
}

cplx PickFunction::eval(cplx z) const {
  if (!(z.imag() > 0)) throw InputError("PickFunction::eval needs Im z > 0");
  return std::visit(
      [z](const auto& x) -> cplx {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rep>) {
          return x.rep.eval(z);
        } else if constexpr (std::is_same_v<T, Composite>) {
          const cplx h = x.exp ? x.exp->h(z) : cplx(0.0);
          if (x.k.is_explicit()) return x.c * std::exp(x.k.log_eval(z) + h);
          return x.c * x.k.eval(z).value * std::exp(h);
        } else if constexpr (std::is_same_v<T, Quotient>) {
          return x.base->eval(z) * std::exp(-x.k.log_eval(z));
        } else {
          return x.f(z);
        }
      },
      form_);
}

LocalValue PickFunction::eval_local(ExtPoint p) const {
  return std::visit(
      [p](const auto& x) -> LocalValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rep>) {
          return x.rep.eval_local(p);
        } else if constexpr (std::is_same_v<T, Composite>) {
          const double e = x.exp ? x.exp->exp_real(p) : 1.0;
          return x.k.eval_local(p) * LocalValue{x.c * e, 0};
        } else if constexpr (std::is_same_v<T, Quotient>) {
          return x.base->eval_local(p) / x.k.eval_local(p);
        } else {
          if (x.sigma.contains(p)) {
            const auto iso = x.sigma.isolated_points();
            if (std::ranges::find(iso, p) == iso.end()) throw InputError("black box: point lies in sigma");
            // Isolated singular points are simple poles; read off the residue.
            if (p.is_inf()) {
              const double a = recover_alpha(x.f);
              if (a > 0) return {a, -1};
              return {x.f(cplx(1e15, 0.0)).real(), 0};
            }
            const double t = p.value();
            const double w = recover_atom(x.f, t);
            if (w > 0) return {-w * (1 + t * t), -1};
            return {x.f(cplx(t, 1e-12)).real(), 0};
          }
          if (p.is_inf()) return {x.f(cplx(1e15, 0.0)).real(), 0};
          return {x.f(cplx(p.value(), 0.0)).real(), 0};
        }
      },
      form_);
}

ClosedSet PickFunction::sigma() const {
  return std::visit(
      [this](const auto& x) -> ClosedSet {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rep>) {
          return x.rep.sigma();
        } else if constexpr (std::is_same_v<T, Composite>) {
          if (!x.k.is_explicit()) throw InputError("sigma of a generator product is not a finite set");
          auto s = points_set(boundary_left(regularize(x.k.source().explicit_set())));
          if (x.exp) s = s.united(x.exp->support());
          return s;
        } else if constexpr (std::is_same_v<T, Quotient>) {
          const ClosedSet base = x.base->sigma();
          const auto iso = base.isolated_points();
          const auto lefts = boundary_left(x.removed);
          auto removable = [&](ExtPoint p) {
            return std::ranges::find(iso, p) != iso.end() && std::ranges::find(lefts, p) != lefts.end();
          };
          std::vector<Span> pieces;
          for (const auto& s : base.pieces()) {
            if (s.lo == s.hi && removable(s.lo)) continue;
            pieces.push_back(s);
          }
          bool inf = base.contains_inf() && !removable(ExtPoint::infinity());
          std::vector<ExtPoint> extra;
          for (const auto& a : boundary_right(x.removed)) {
            if (!base.contains(a) && !is_zero_at(*x.base, a)) extra.push_back(a);
          }
          for (const auto& a : extra) {
            if (a.is_inf()) inf = true;
            else pieces.push_back({a.value(), a.value()});
          }
          return ClosedSet(std::move(pieces), inf);
        } else {
          (void)this;
          return x.sigma;
        }
      },
      form_);
}

// ---------------------------------------------------------------- analysis

std::vector<ExtPoint> omega_samples(const ArcSet& omega, int per_component) {
  std::vector<ExtPoint> out;
  auto at = [](double th) -> ExtPoint {
    if (th == kHalfPi) return ExtPoint::infinity();
    return std::tan(th);
  };
  if (omega.contains_inf()) out.push_back(ExtPoint::infinity());
  if (omega.is_full()) {
    for (int k = 0; k < per_component; ++k) out.push_back(at(-kHalfPi + kPi * (k + 0.5) / per_component));
    return out;
  }
  for (const auto& comp : omega.arcs()) {
    const ExtPoint c = comp.left();
    const ExtPoint d = comp.right();
    const double th_c = c.is_inf() ? -kHalfPi : std::atan(c.value());
    double th_d = d.is_inf() ? kHalfPi : std::atan(d.value());
    while (th_d <= th_c) th_d += kPi;
    for (int k = 0; k < per_component; ++k) out.push_back(at(th_c + (th_d - th_c) * (k + 0.5) / per_component));
  }
  return out;
}


AnalysisResult analyze(const PickFunction& f) {
  AnalysisResult out;
  out.sigma = f.sigma();
  out.omega = out.sigma.complement();
  if (const auto* c = std::get_if<PickFunction::Composite>(&f.form()); c && c->k.is_explicit()) {
    out.gamma = regularize(c->k.source().explicit_set());
    for (const auto& a : boundary_right(out.gamma)) {
      if (!out.sigma.contains(a)) out.zeros.push_back(a);
    }
    out.infinity_in_gamma = out.gamma.contains_inf();
    return out;
  }
  auto g = find_gamma([&](ExtPoint x) { return f.eval_local(x); }, out.omega);
  out.gamma = std::move(g.gamma);
  out.zeros = std::move(g.zeros);
  out.infinity_in_gamma = g.infinity_in_gamma;
  return out;
}

std::vector<cplx> certification_grid(const ClosedSet& sigma) {
  auto grid = halton_box(1000, -10, 10, 0, 10);
  std::vector<Span> near;
  for (const auto& s : sigma.pieces()) {
    const double lo = std::clamp(s.lo, -10.0, 10.0) - 0.5;
    const double hi = std::clamp(s.hi, -10.0, 10.0) + 0.5;
    near.push_back({lo, hi});
  }
  if (near.empty()) near.push_back({-10.0, 10.0});
  for (std::size_t k = 1; k <= 100; ++k) {
    const auto& s = near[k % near.size()];
    grid.emplace_back(s.lo + (s.hi - s.lo) * radical_inverse(k, 2), 1e-4);
  }
  return grid;
}

double min_imag_on_grid(const PickFunction& f) {
  double m = kInf;
  for (const auto& z : certification_grid(f.sigma())) m = std::min(m, f.eval(z).imag());
  return m;
}

// ----------------------------------------------------------------- divide

namespace {

NevanlinnaRep divide_atomic(const NevanlinnaRep& f, const Arc& J, bool zero_at_a) {
  const ExtPoint b = J.left();
  const ExtPoint a = J.right();
  std::vector<Atom> atoms;
  for (const auto& at : f.rho().atoms()) {
    if (ExtPoint(at.t) == b) continue;
    const auto p = p_local(J, at.t);
    atoms.push_back({at.t, at.w / p.coef});
  }
  if (a.is_finite() && !zero_at_a) {
    const double x = a.value();
    const double fa = f.eval(cplx(x, 0.0)).real();
    const double dp = p_local(J, a).coef;
    const double w = -fa / (dp * (1 + x * x));
    if (w > 0) atoms.push_back({x, w});
  }
  double alpha = 0.0;
  if (!(a.is_inf() && zero_at_a)) {
    const auto q = f.eval_local(ExtPoint::infinity()) / p_local(J, ExtPoint::infinity());
    if (q.order == -1) alpha = std::max(q.coef, 0.0);
  }
  const double beta = (f.eval(kI) / p_eval(J, kI)).real();
  return NevanlinnaRep(alpha, beta, Measure(atoms));
}

PickFunction divide_unchecked(const PickFunction& f, const Arc& J) {
  if (J.is_empty()) return f;
  if (J.is_full()) {
    if (!f.omega().is_full() || !(f.eval_local(0.0).real() < 0)) throw InputError("divide_single: J is not in Gamma(f)");
    if (const auto* r = std::get_if<PickFunction::Rep>(&f.form())) return PickFunction::rep(NevanlinnaRep(0, -r->rep.beta()));
    return PickFunction::quotient(f, ArcSet::full());
  }
  if (J.is_punctured()) throw InputError("divide_single: a punctured circle cannot lie in Gamma(f)");
  const ArcSet js(J);
  const ArcSet omega = f.omega();
  if (!js.is_subset_of(omega) || !omega.contains(J.right())) throw InputError("divide_single: J is not in Omega(f)");
  const bool zero = is_zero_at(f, J.right());
  if (!zero && !(f.eval_local(J.right()).real() < 0)) throw InputError("divide_single: f is not negative on J");

  if (const auto* r = std::get_if<PickFunction::Rep>(&f.form()); r && r->rep.rho().is_atomic()) {
    return PickFunction::rep(divide_atomic(r->rep, J, zero));
  }
  if (const auto* c = std::get_if<PickFunction::Composite>(&f.form()); c && c->k.is_explicit()) {
    const ArcSet O = regularize(c->k.source().explicit_set());
    std::vector<Arc> rest;
    bool found = false;
    for (const auto& arc : O.arcs()) {
      if (arc == J) found = true;
      else rest.push_back(arc);
    }
    if (found) return PickFunction::composite(c->c, KreinProduct(ArcSet::normalize(rest)), c->exp);
  }
  return PickFunction::quotient(f, js);
}

}  // namespace

PickFunction divide_single(const PickFunction& f, const Arc& J) {
  auto g = divide_unchecked(f, J);
  certify_membership(g, "divide_single");
  return g;
}

// -------------------------------------------------------------- factorize

bool Factorization::ok() const {
  return std::ranges::all_of(posts, [](const PostCheck& p) { return p.ok; });
}

Factorization factorize(const PickFunction& f, bool throw_on_failure) {
  const auto res = analyze(f);
  const ArcSet gamma = res.gamma;
  KreinProduct k(gamma);

  std::optional<PickFunction> g;
  if (const auto* r = std::get_if<PickFunction::Rep>(&f.form()); r && r->rep.rho().is_atomic()) {
    PickFunction cur = f;
    for (const auto& arc : gamma.arcs()) cur = divide_unchecked(cur, arc);
    g = cur;
  } else if (const auto* c = std::get_if<PickFunction::Composite>(&f.form()); c && c->k.is_explicit()) {
    g = PickFunction::composite(c->c, KreinProduct(ArcSet()), c->exp);
  } else {
    g = PickFunction::quotient(f, gamma);
  }

  std::vector<PostCheck> posts;
  const ArcSet omega_f = res.omega;
  const ArcSet omega_g = g->omega();
  {
    PostCheck p{"sigma(g) in sigma(f)", omega_f.is_subset_of(omega_g), 0.0, ""};
    if (!p.ok) p.detail = "Omega(f) is not contained in Omega(g)";
    posts.push_back(p);
  }
  {
    PostCheck p{"g > 0 on Omega(g)", true, kInf, ""};
    for (const auto& x : omega_samples(omega_g, 50)) {
      double v = 0.0;
      try {
        const auto lv = g->eval_local(x);
        v = lv.order == 0 ? lv.coef : (lv.order > 0 ? 0.0 : -kInf);
      } catch (const InputError&) {
        continue;  // within the guard distance of a removed pole
      }
      if (v < p.residual) p.residual = v;
      if (!(v > 0)) {
        p.ok = false;
        if (p.detail.empty()) p.detail = "g(" + x.str() + ") = " + std::to_string(v);
      }
    }
    posts.push_back(p);
  }
  {
    PostCheck p{"Omega(g) regular", is_regular(omega_g), 0.0, ""};
    if (!p.ok) p.detail = "Omega(g) is not Lebesgue regular";
    posts.push_back(p);
  }
  {
    const ArcSet omega_k = points_set(boundary_left(gamma)).complement();
    PostCheck p{"Omega(f) = Omega(k) & Omega(g)", intersect(omega_k, omega_g) == omega_f, 0.0, ""};
    if (!p.ok) p.detail = "Omega(f) differs from the intersection";
    posts.push_back(p);
  }
  {
    PostCheck p{"g in class H", true, 0.0, ""};
    p.residual = min_imag_on_grid(*g);
    p.ok = p.residual >= -1e-12;
    if (!p.ok) p.detail = "Im g negative on the certification grid";
    posts.push_back(p);
  }
  {
    PostCheck p{"f = k g", true, 0.0, ""};
    for (const auto& z : halton_box(200, -10, 10, 0, 10)) {
      const cplx fz = f.eval(z);
      const double r = std::abs(fz - k(z) * g->eval(z)) / std::max(1e-300, std::abs(fz));
      p.residual = std::max(p.residual, r);
    }
    p.ok = p.residual <= 1e-9;
    if (!p.ok) p.detail = "relative residual above 1e-9";
    posts.push_back(p);
  }

  Factorization out{gamma, std::move(k), std::move(*g), std::move(posts)};
  if (throw_on_failure && !out.ok()) {
    std::ostringstream os;
    os << "factorize: post-verification failed:";
    for (const auto& p : out.posts) {
      if (!p.ok) os << " [" << p.name << ": " << p.detail << "]";
    }
    throw CertificationError(os.str());
  }
  return out;
}

ConstantFactor constant_factor_check(const PickFunction& f, double tol) {
  const auto sig = f.sigma();
  if (sig.measure() > 0) throw InputError("constant_factor_check: sigma(f) has positive measure");
  ConstantFactor out;
  out.gamma = analyze(f).gamma;
  KreinProduct k(out.gamma);
  out.c = std::abs(f.eval(kI));
  for (const auto& z : halton_box(20, -10, 10, 0, 10)) {
    const double r = std::abs(f.eval(z) / (out.c * k(z)) - 1.0);
    if (r >= out.residual) {
      out.residual = r;
      out.worst = z;
    }
  }
  out.ok = out.residual <= tol;
  return out;
}

ComposeResult compose_in_class(const ArcSet& O, const ExpRep& e) {
  if (e.has_unit_piece()) throw InputError("compose_in_class: psi = 1 on a piece is not supported");
  for (const auto& p : e.pieces()) {
    const Arc J = arc_of(p.lo, p.hi);
    const bool overlap = !intersect(ArcSet(J), O).empty() || O.contains(ExtPoint(p.lo)) || O.contains(ExtPoint(p.hi));
    if (overlap) throw InputError("compose_in_class: psi piece overlaps O");
  }
  KreinProduct k(O);
  ComposeResult out{PickFunction::composite(1.0, k, e), kInf, 0.0, false};
  for (const auto& z : certification_grid(out.f.sigma())) {
    out.min_imag = std::min(out.min_imag, out.f.eval(z).imag());
    out.max_arg = std::max(out.max_arg, angle_subtended(O, z) + e.h(z).imag());
  }
  out.ok = out.min_imag >= -1e-12 && out.max_arg <= kPi + 1e-12;
  return out;
}

double psi_recover(const Evaluator& g, double t, const LadderOptions& opts) {
  std::vector<double> v;
  for (double e : opts.eps) {
    double a = std::arg(g(cplx(t, e)));
    if (a < -kHalfPi) a += 2 * kPi;
    v.push_back(a / kPi);
  }
  const auto r = extrapolate_to_zero(opts.eps, v);
  if (!(r.error <= opts.tol)) throw ConvergenceError("psi_recover: ladder did not settle");
  return std::clamp(r.value, 0.0, 1.0);
}

PickFunction builtin_black_box(const std::string& name) {
  if (name == "z_plus_i") {
    return PickFunction::black_box([](cplx z) { return z + kI; }, ClosedSet({{-kInf, kInf}}, true), name);
  }
  if (name == "z_plus_sqrt_z2_minus_1") {
    // Principal roots keep the branch positive for z > 1 and in ℂ⁺ on ℂ⁺.
    return PickFunction::black_box([](cplx z) { return z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0); },
                                   ClosedSet({{-1.0, 1.0}}, true), name);
  }
  throw InputError("unknown black box: " + name);
}

}  // namespace hplane
