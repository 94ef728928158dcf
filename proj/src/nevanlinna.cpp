#include "hplane/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hplane/error.hpp"

namespace hplane {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;

double moment(const DensityPiece& p, int k) {
  // ∫_l^r (1 + t²) t^k dt
  auto pw = [](double x, int n) { return std::pow(x, n); };
  return (pw(p.hi, k + 1) - pw(p.lo, k + 1)) / (k + 1) + (pw(p.hi, k + 3) - pw(p.lo, k + 3)) / (k + 3);
}

double far_radius(const DensityPiece& p) { return 4.0 * std::max({1.0, std::abs(p.lo), std::abs(p.hi)}); }

// log((r − z)/(l − z)), continued from ℂ⁺ to the real line.
cplx log_ratio(const DensityPiece& p, cplx z) {
  const double re = std::log(std::abs(p.hi - z)) - std::log(std::abs(p.lo - z));
  if (z.imag() > 0) return {re, std::arg((z - p.hi) / (z - p.lo))};
  const double x = z.real();
  return {re, (x > p.lo && x < p.hi) ? kPi : 0.0};
}

// Φ(z) = ∫ (1 + t²)/(t − z) dt over the piece.
cplx phi(const DensityPiece& p, cplx z) {
  if (std::abs(z) >= far_radius(p)) {
    cplx sum = 0.0;
    cplx zp = 1.0 / z;
    for (int k = 0; k < 80; ++k) {
      const cplx term = moment(p, k) * zp;
      sum -= term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      zp /= z;
    }
    return sum;
  }
  const double len = p.hi - p.lo;
  return (1.0 + z * z) * log_ratio(p, z) + 2.0 * z * len + 0.5 * ((p.hi - z) * (p.hi - z) - (p.lo - z) * (p.lo - z));
}

cplx phi_prime(const DensityPiece& p, cplx z) {
  if (std::abs(z) >= far_radius(p)) {
    cplx sum = 0.0;
    cplx zp = 1.0 / (z * z);
    for (int k = 0; k < 80; ++k) {
      const cplx term = double(k + 1) * moment(p, k) * zp;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      zp /= z;
    }
    return sum;
  }
  return 2.0 * z * log_ratio(p, z) + (1.0 + z * z) * (1.0 / (p.lo - z) - 1.0 / (p.hi - z)) + (p.hi - p.lo);
}

double half_square_diff(const DensityPiece& p) { return 0.5 * (p.hi * p.hi - p.lo * p.lo); }

std::vector<Atom> cantor_atoms(int depth) {
  std::vector<double> lefts{0.0};
  double len = 1.0;
  for (int k = 0; k < depth; ++k) {
    len /= 3.0;
    std::vector<double> next;
    next.reserve(lefts.size() * 2);
    for (double l : lefts) {
      next.push_back(l);
      next.push_back(l + 2.0 * len);
    }
    lefts = std::move(next);
  }
  std::vector<Atom> out;
  const double w = std::ldexp(1.0, -depth);
  for (double l : lefts) out.push_back({l, w});
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Measure

Measure::Measure(std::vector<Atom> atoms, std::vector<DensityPiece> ac, std::optional<int> cantor_depth)
    : atoms_(std::move(atoms)), cantor_depth_(cantor_depth) {
  if (cantor_depth) {
    if (*cantor_depth < 0 || *cantor_depth > 30) throw InputError("cantor_depth must be in [0, 30]");
    auto extra = cantor_atoms(*cantor_depth);
    atoms_.insert(atoms_.end(), extra.begin(), extra.end());
  }
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.t) || !std::isfinite(a.w) || !(a.w > 0)) throw InputError("atoms need finite t and w > 0");
  }
  std::ranges::sort(atoms_, {}, &Atom::t);
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].t == atoms_[i - 1].t) throw InputError("atoms must be distinct");
  }
  for (const auto& p : ac) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !(p.lo < p.hi)) throw InputError("ac piece needs finite l < r");
    if (!std::isfinite(p.density) || p.density < 0) throw InputError("ac density must be nonnegative");
    if (p.density > 0) ac_.push_back(p);
  }
  std::ranges::sort(ac_, {}, &DensityPiece::lo);
  for (std::size_t i = 1; i < ac_.size(); ++i) {
    if (ac_[i].lo < ac_[i - 1].hi) throw InputError("ac pieces must be disjoint");
  }
}

double Measure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.w;
  for (const auto& p : ac_) m += p.density * (p.hi - p.lo);
  return m;
}

ClosedSet Measure::support() const {
  std::vector<Span> pieces;
  for (const auto& a : atoms_) pieces.push_back({a.t, a.t});
  for (const auto& p : ac_) pieces.push_back({p.lo, p.hi});
  return ClosedSet(std::move(pieces), false);
}

// ----------------------------------------------------------- NevanlinnaRep

NevanlinnaRep::NevanlinnaRep(double alpha, double beta, Measure rho) : alpha_(alpha), beta_(beta), rho_(std::move(rho)) {
  if (!std::isfinite(alpha) || alpha < 0) throw InputError("alpha must be finite and nonnegative");
  if (!std::isfinite(beta)) throw InputError("beta must be finite");
}

cplx NevanlinnaRep::eval(cplx z) const {
  if (z.imag() < 0) throw InputError("eval: Im z must be nonnegative");
  if (z.imag() == 0.0) {
    for (const auto& a : rho_.atoms()) {
      if (a.t == z.real()) return {kInf, 0.0};
    }
  }
  cplx f = alpha_ * z + beta_;
  for (const auto& a : rho_.atoms()) f += a.w * (1.0 + z * a.t) / (a.t - z);
  for (const auto& p : rho_.ac()) f += p.density * (phi(p, z) - half_square_diff(p));
  return f;
}

cplx NevanlinnaRep::derivative(cplx z) const {
  cplx d = alpha_;
  for (const auto& a : rho_.atoms()) d += a.w * (1.0 + a.t * a.t) / ((a.t - z) * (a.t - z));
  for (const auto& p : rho_.ac()) d += p.density * phi_prime(p, z);
  return d;
}

double NevanlinnaRep::value_at_infinity() const {
  if (alpha_ > 0) throw InputError("value_at_infinity: f has a pole at infinity");
  double v = beta_;
  for (const auto& a : rho_.atoms()) v -= a.w * a.t;
  for (const auto& p : rho_.ac()) v -= p.density * half_square_diff(p);
  return v;
}

LocalValue NevanlinnaRep::eval_local(ExtPoint x) const {
  if (x.is_inf()) {
    if (alpha_ > 0) return {alpha_, -1};
    return {value_at_infinity(), 0};
  }
  const double t = x.value();
  for (const auto& p : rho_.ac()) {
    if (t >= p.lo && t <= p.hi) throw InputError("eval_local: point lies in a density piece");
  }
  for (const auto& a : rho_.atoms()) {
    if (a.t == t) return {-a.w * (1.0 + t * t), -1};
  }
  return {eval(cplx(t, 0.0)).real(), 0};
}

ClosedSet NevanlinnaRep::sigma() const {
  auto s = rho_.support();
  if (alpha_ > 0) return s.united(ClosedSet({}, true));
  return s;
}

// ---------------------------------------------------------------- recovery

double recover_alpha(const Evaluator& f, double tol) {
  std::vector<double> h;
  std::vector<double> v;
  for (int k = 10; k <= 16; ++k) {
    const double y = std::ldexp(1.0, k);
    h.push_back(1.0 / y);
    v.push_back((f(cplx(0, y)) / cplx(0, y)).real());
  }
  const auto r = extrapolate_to_zero(h, v);
  if (!(r.error <= tol * std::max(1.0, std::abs(r.value)))) throw ConvergenceError("recover_alpha: ladder did not settle");
  if (r.value < -tol) throw ConvergenceError("recover_alpha: negative limit, f is not in the class");
  return std::max(r.value, 0.0);
}

double recover_beta(const Evaluator& f) { return f(cplx(0, 1)).real(); }

double stieltjes_density(const Evaluator& f, double t, double eps) {
  if (!(eps > 0)) throw InputError("stieltjes_density: eps must be positive");
  return f(cplx(t, eps)).imag() / (kPi * (1.0 + t * t));
}

namespace {
double ladder_limit(const std::function<double(double)>& g, const LadderOptions& opts, const char* what) {
  std::vector<double> v;
  for (double e : opts.eps) v.push_back(g(e));
  const auto r = extrapolate_to_zero(opts.eps, v);
  if (!(r.error <= opts.tol * std::max(1.0, std::abs(r.value)))) throw ConvergenceError(std::string(what) + ": ladder did not settle");
  return r.value;
}
}  // namespace

double stieltjes_density_limit(const Evaluator& f, double t, const LadderOptions& opts) {
  return ladder_limit([&](double e) { return stieltjes_density(f, t, e); }, opts, "stieltjes_density_limit");
}

double recover_atom(const Evaluator& f, double t0, const LadderOptions& opts) {
  const double w = ladder_limit([&](double e) { return e * f(cplx(t0, e)).imag() / (1.0 + t0 * t0); }, opts,
                                "recover_atom");
  return std::max(w, 0.0);
}

// ------------------------------------------------------------------ Γ(f)

namespace {

double theta_start(ExtPoint c) { return c.is_inf() ? -kHalfPi : std::atan(c.value()); }

double theta_in(ExtPoint x, double th_c) {
  double th = x.is_inf() ? kHalfPi : std::atan(x.value());
  while (th < th_c) th += kPi;
  return th;
}

ExtPoint point_at(double th) {
  if (th == kHalfPi) return ExtPoint::infinity();
  return std::tan(th);
}

ExtPoint shrink_left(ExtPoint c, double s) {
  if (c.is_inf()) return -1.0 / s;
  return c.value() + s * std::max(1.0, std::abs(c.value()));
}

ExtPoint shrink_right(ExtPoint d, double s) {
  if (d.is_inf()) return 1.0 / s;
  return d.value() - s * std::max(1.0, std::abs(d.value()));
}

struct Component {
  ExtPoint c;
  ExtPoint d;
  bool full = false;
};

}  // namespace

GammaResult find_gamma(const LocalEvaluator& f, const ArcSet& omega, BisectOptions opts) {
  GammaResult out;
  auto value = [&](ExtPoint x) { return f(x).real(); };
  if (omega.is_full()) {
    // No singularities: an increasing function on the whole circle is constant.
    if (value(0.0) < 0) out.gamma = ArcSet::full();
    out.infinity_in_gamma = out.gamma.contains_inf();
    return out;
  }
  std::vector<Arc> pieces;
  static constexpr double kShrinks[] = {1e-9, 1e-12, 1e-15};
  for (const auto& comp : omega.arcs()) {
    const ExtPoint c = comp.left();
    const ExtPoint d = comp.right();
    const double th_c = theta_start(c);
    double th_d = d.is_inf() ? kHalfPi : std::atan(d.value());
    while (th_d <= th_c) th_d += kPi;

    // Left end: f → −∞ there, so look for a negative value close to c.
    double th_lo = 0.0;
    double f_lo = 0.0;
    for (double s : kShrinks) {
      th_lo = theta_in(shrink_left(c, s), th_c);
      if (th_lo <= th_c || th_lo >= th_d) continue;
      f_lo = value(point_at(th_lo));
      if (f_lo < 0) break;
    }
    if (!(f_lo < 0)) continue;
    double th_hi = 0.0;
    double f_hi = -1.0;
    for (double s : kShrinks) {
      th_hi = theta_in(shrink_right(d, s), th_c);
      if (th_hi >= th_d || th_hi <= th_lo) continue;
      f_hi = value(point_at(th_hi));
      if (f_hi >= 0) break;
    }
    if (f_hi < 0) {
      pieces.push_back(comp);
      continue;
    }
    // Bisection in θ = atan x until the bracket no longer passes through ∞.
    if (th_lo < kHalfPi && kHalfPi < th_hi) {
      const double f_inf = value(ExtPoint::infinity());
      if (f_inf == 0.0) {
        out.zeros.push_back(ExtPoint::infinity());
        pieces.emplace_back(c, ExtPoint::infinity());
        continue;
      }
      if (f_inf < 0) th_lo = kHalfPi;
      else th_hi = kHalfPi;
    }
    for (int it = 0; it < opts.max_iter && (th_lo == kHalfPi || th_hi == kHalfPi); ++it) {
      const double mid = 0.5 * (th_lo + th_hi);
      if (mid <= th_lo || mid >= th_hi) break;
      if (value(point_at(mid)) < 0) th_lo = mid;
      else th_hi = mid;
    }
    ExtPoint root;
    if (th_lo == kHalfPi || th_hi == kHalfPi) {
      root = point_at(th_lo == kHalfPi ? th_hi : th_lo);
    } else {
      const double x_lo = point_at(th_lo).value();
      const double x_hi = point_at(th_hi).value();
      root = bisect([&](double x) { return value(x); }, x_lo, x_hi, opts);
    }
    out.zeros.push_back(root);
    if (root == d) pieces.push_back(comp);
    else pieces.emplace_back(c, root);
  }
  out.gamma = regularize(ArcSet::normalize(pieces));
  out.infinity_in_gamma = out.gamma.contains_inf();
  return out;
}

AnalysisResult analyze(const NevanlinnaRep& rep) {
  AnalysisResult out;
  out.sigma = rep.sigma();
  out.omega = out.sigma.complement();
  auto g = find_gamma([&](ExtPoint x) { return rep.eval_local(x); }, out.omega);
  out.gamma = std::move(g.gamma);
  out.zeros = std::move(g.zeros);
  out.infinity_in_gamma = g.infinity_in_gamma;
  return out;
}

// ------------------------------------------------------- Cauchy transform

cplx cauchy_transform(const Measure& mu, cplx z) {
  cplx g = 0.0;
  for (const auto& a : mu.atoms()) {
    if (z == cplx(a.t)) return {kInf, 0.0};
    g += a.w / (z - a.t);
  }
  for (const auto& p : mu.ac()) g -= p.density * log_ratio(p, z);
  return g;
}

// ------------------------------------------------------------------ Boole

BooleResult boole_superlevel_measure(const Measure& mu, double y) {
  if (!mu.is_atomic()) throw InputError("boole: measure must be purely atomic");
  if (!(y > 0)) throw InputError("boole: y must be positive");
  const auto& at = mu.atoms();
  BooleResult out;
  if (at.empty()) return out;
  const double mass = mu.total_mass();
  auto G = [&](double x) { return cauchy_transform(mu, x).real(); };
  const BisectOptions exact{400, 0.0};
  // G decreases on each gap between consecutive atoms.
  const std::size_t n = at.size();
  {
    const double lo = at.front().t - mass / y - 1.0;
    const double hi = std::nextafter(at.front().t, -kInf);
    const double q = bisect([&](double x) { return G(x) + y; }, lo, hi, exact);
    out.minus_roots.push_back(q);
    out.minus += at.front().t - q;
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double lo = std::nextafter(at[j].t, kInf);
    const double hi = std::nextafter(at[j + 1].t, -kInf);
    const double p = bisect([&](double x) { return G(x) - y; }, lo, hi, exact);
    const double q = bisect([&](double x) { return G(x) + y; }, lo, hi, exact);
    out.plus_roots.push_back(p);
    out.minus_roots.push_back(q);
    out.plus += p - at[j].t;
    out.minus += at[j + 1].t - q;
  }
  {
    const double lo = std::nextafter(at.back().t, kInf);
    const double hi = at.back().t + mass / y + 1.0;
    const double p = bisect([&](double x) { return G(x) - y; }, lo, hi, exact);
    out.plus_roots.push_back(p);
    out.plus += p - at.back().t;
  }
  return out;
}

// ------------------------------------------------------------------ Letac

LetacResult letac_pushforward_check(const NevanlinnaRep& rep, double c, double d) {
  if (rep.alpha() != 1.0) throw InputError("letac: alpha must be 1");
  if (!rep.rho().is_atomic()) throw InputError("letac: measure must be atomic");
  if (!(std::isfinite(c) && std::isfinite(d) && c < d)) throw InputError("letac: need finite c < d");
  const auto& at = rep.rho().atoms();
  auto f = [&](double x) { return rep.eval(cplx(x, 0.0)).real(); };
  const BisectOptions exact{400, 0.0};
  LetacResult out;
  // Branches: the gaps between atoms, f increasing from −∞ to +∞ on each.
  std::vector<std::pair<double, double>> gaps;
  std::vector<double> ts;
  for (const auto& a : at) ts.push_back(a.t);
  for (std::size_t j = 0; j <= ts.size(); ++j) {
    const double lo = j == 0 ? -kInf : std::nextafter(ts[j - 1], kInf);
    const double hi = j == ts.size() ? kInf : std::nextafter(ts[j], -kInf);
    gaps.emplace_back(lo, hi);
  }
  for (auto [lo, hi] : gaps) {
    double a = lo;
    double b = hi;
    if (std::isinf(lo)) {
      const double anchor = std::isfinite(hi) ? hi : 0.0;
      a = anchor - 1.0;
      for (double step = 2.0; !(f(a) < c); step *= 2) {
        if (step > 1e300) throw ConvergenceError("letac: cannot bracket the lower level");
        a = anchor - step;
      }
    }
    if (std::isinf(hi)) {
      const double anchor = std::isfinite(lo) ? lo : 0.0;
      b = anchor + 1.0;
      for (double step = 2.0; !(f(b) > d); step *= 2) {
        if (step > 1e300) throw ConvergenceError("letac: cannot bracket the upper level");
        b = anchor + step;
      }
    }
    const double rc = bisect([&](double x) { return f(x) - c; }, a, b, exact);
    const double rd = bisect([&](double x) { return f(x) - d; }, a, b, exact);
    out.branches.emplace_back(rc, rd);
    out.length += rd - rc;
  }
  return out;
}

}  // namespace hplane
