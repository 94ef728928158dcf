#include "hplane/krein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hplane/error.hpp"
#include "hplane/numerics.hpp"

namespace hplane {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double norm_i(double x) { return std::hypot(1.0, x); }  // |i − x|

// p for the ordinary interval b < a, both finite.
cplx p_interval(double b, double a, cplx z) { return norm_i(b) / norm_i(a) * (z - a) / (z - b); }

LocalValue local_interval(double b, double a, ExtPoint x) {
  const double c = norm_i(b) / norm_i(a);
  if (x.is_inf()) return {c, 0};
  const double t = x.value();
  if (t == a) return {c / (a - b), 1};
  if (t == b) return {c * (b - a), -1};
  return {c * (t - a) / (t - b), 0};
}

double dist_to_interval(cplx z, double lo, double hi) {
  const double dx = std::max({lo - z.real(), 0.0, z.real() - hi});
  return std::hypot(dx, z.imag());
}

// Upper bound of |v_J(z)| for every arc J inside [lo, hi]; total length len.
double arc_bound(cplx z, double lo, double hi, double len) {
  const double d = dist_to_interval(z, lo, hi);
  if (d == 0.0) return kInf;
  return len * (1.0 / d + 0.5);
}

// log p_J(z) for Im z > 0 or real z off the endpoints of J.
cplx log_p_any(const Arc& J, cplx z) {
  if (z.imag() > 0) return log_p(J, z);
  const cplx p = p_eval(J, z);
  return {std::log(std::abs(p.real())), p.real() < 0 ? kPi : 0.0};
}

void guard_real(const std::vector<Arc>& arcs, ExtPoint x) {
  if (x.is_inf()) return;
  for (const auto& arc : arcs) {
    if (!arc.is_proper() || arc.left().is_inf()) continue;
    const double gap = std::abs(arc.left().value() - x.value());
    if (gap > 0 && gap < kRealGuard) throw InputError("real evaluation within the guard distance of a pole");
  }
}

}  // namespace

bool is_infinite(cplx w) { return std::isinf(w.real()) || std::isinf(w.imag()); }

cplx p_eval(const Arc& J, cplx z) {
  if (J.is_empty()) return 1.0;
  if (J.is_full() || J.is_punctured()) return -1.0;
  const ExtPoint b = J.left();
  const ExtPoint a = J.right();
  if (z.imag() == 0.0) {
    const auto v = p_local(J, z.real());
    if (v.is_pole()) return {kInf, 0.0};
    return v.real();
  }
  if (b.is_inf()) return (z - a.value()) / norm_i(a.value());
  if (a.is_inf()) return -norm_i(b.value()) / (z - b.value());
  if (b < a) return p_interval(b.value(), a.value(), z);
  return -1.0 / p_interval(a.value(), b.value(), z);
}

LocalValue p_local(const Arc& J, ExtPoint x) {
  if (J.is_empty()) return {1.0, 0};
  if (J.is_full() || J.is_punctured()) return {-1.0, 0};
  const ExtPoint b = J.left();
  const ExtPoint a = J.right();
  if (b.is_inf()) {
    const double av = a.value();
    const double n = norm_i(av);
    if (x.is_inf()) return {1.0 / n, -1};
    if (x.value() == av) return {1.0 / n, 1};
    return {(x.value() - av) / n, 0};
  }
  if (a.is_inf()) {
    const double bv = b.value();
    const double n = norm_i(bv);
    if (x.is_inf()) return {-n, 1};
    if (x.value() == bv) return {-n, -1};
    return {-n / (x.value() - bv), 0};
  }
  if (b < a) return local_interval(b.value(), a.value(), x);
  const auto v = local_interval(a.value(), b.value(), x);
  return {-1.0 / v.coef, -v.order};
}

cplx log_p(const Arc& J, cplx z) {
  if (!(z.imag() > 0)) throw InputError("log_p: needs Im z > 0");
  if (J.is_empty()) return 0.0;
  if (J.is_full() || J.is_punctured()) return {0.0, kPi};
  return {std::log(std::abs(p_eval(J, z))), angle_subtended(J, z)};
}

// ------------------------------------------------------------- KreinProduct

KreinProduct::KreinProduct(ArcGenerator source, Truncation trunc) : source_(std::move(source)), trunc_(trunc) {
  if (source_.is_explicit()) arcs_ = source_.enumerate();
}

cplx KreinProduct::log_eval(cplx z) const {
  if (!is_explicit()) throw InputError("log_eval: explicit sets only");
  cplx s = 0.0;
  for (const auto& arc : arcs_) s += log_p(arc, z);
  return s;
}

LocalValue KreinProduct::eval_local(ExtPoint x) const {
  if (!is_explicit()) throw InputError("eval_local: explicit sets only");
  guard_real(arcs_, x);
  LocalValue v;
  for (const auto& arc : arcs_) v = v * p_local(arc, x);
  return v;
}

KreinValue KreinProduct::eval(cplx z) const {
  if (z.imag() < 0) throw InputError("krein eval: Im z must be nonnegative");
  if (!is_explicit()) return eval_cantor(z);
  KreinValue out;
  if (source_.explicit_set().is_full()) {
    out.value = -1.0;
    out.factors = 1;
    return out;
  }
  if (z.imag() == 0.0) {
    const auto v = eval_local(z.real());
    out.value = v.is_pole() ? cplx(kInf, 0.0) : cplx(v.real(), 0.0);
    out.factors = arcs_.size();
    return out;
  }
  const std::size_t n = std::min(arcs_.size(), trunc_.max_factors);
  cplx s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += log_p(arcs_[k], z);
  double tail = 0.0;
  for (std::size_t k = n; k < arcs_.size(); ++k) {
    for (const auto& sp : arcs_[k].spans()) tail += arc_bound(z, sp.lo, sp.hi, sp.hi - sp.lo);
  }
  out.value = std::exp(s);
  out.factors = n;
  out.tail_bound = tail == 0.0 ? 0.0 : std::abs(out.value) * std::expm1(tail);
  if (!(out.tail_bound <= trunc_.tail_tol)) throw TailNotCertified("krein eval: truncated tail exceeds tolerance");
  return out;
}

KreinValue KreinProduct::eval_cantor(cplx z) const {
  const auto& c = source_.cantor();
  cplx s = 0.0;
  std::size_t factors = 0;
  if (c.exterior) {
    s += log_p_any(Arc(c.hi, c.lo), z);
    ++factors;
  }
  std::vector<Span> kept{{c.lo, c.hi}};
  for (int level = 0;; ++level) {
    const bool last = c.depth && level == *c.depth;
    double tail = 0.0;
    if (!last) {
      for (const auto& k : kept) tail += arc_bound(z, k.lo, k.hi, k.hi - k.lo);
    }
    const cplx value = std::exp(s);
    const double bound = tail == 0.0 ? 0.0 : std::abs(value) * std::expm1(tail);
    if (bound <= trunc_.tail_tol) return {value, bound, factors, level};
    if (factors + kept.size() > trunc_.max_factors || !std::isfinite(bound))
      throw TailNotCertified("krein eval: Cantor tail bound " + std::to_string(bound) + " above tolerance at level " +
                             std::to_string(level));
    std::vector<Span> next;
    next.reserve(kept.size() * 2);
    for (const auto& k : kept) {
      const double third = (k.hi - k.lo) / 3.0;
      const double m1 = k.lo + third;
      const double m2 = k.hi - third;
      s += log_p_any(Arc(m1, m2), z);
      next.push_back({k.lo, m1});
      next.push_back({m2, k.hi});
    }
    factors += kept.size();
    kept = std::move(next);
  }
}

// ---------------------------------------------------------------- integral

cplx k_integral_eval(const ArcSet& set, cplx z) {
  if (!(z.imag() > 0)) throw InputError("k_integral_eval: needs Im z > 0");
  if (set.is_full()) return -1.0;
  const double x = z.real();
  const double y = z.imag();
  // Finite panels use t itself so t − z keeps its digits near the peak;
  // unbounded tails use θ = atan t.
  auto in_t = [z, x, y](double t) { return (1.0 + t * z) / (cplx(t - x, -y) * (1.0 + t * t)); };
  auto in_theta = [z](double th) {
    const double s = std::sin(th);
    const double c = std::cos(th);
    return (c + z * s) / (s - z * c);
  };
  // The integrand peaks at t = Re z with width Im z; geometric cuts around it.
  std::vector<double> cuts{x};
  for (double w = y; w < 1e3 * (1 + std::abs(x)); w *= 4) {
    cuts.push_back(x - w);
    cuts.push_back(x + w);
  }
  std::ranges::sort(cuts);
  cplx v = 0.0;
  for (const auto& sp : set.spans()) {
    std::vector<double> nodes{sp.lo};
    for (double c : cuts) {
      if (c > nodes.back() && c < sp.hi) nodes.push_back(c);
    }
    nodes.push_back(sp.hi);
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const double a = nodes[k];
      const double b = nodes[k + 1];
      const auto r = std::isinf(a) || std::isinf(b) ? integrate(in_theta, std::atan(a), std::atan(b)) : integrate(in_t, a, b);
      if (!(r.error <= 1e-9 * std::max(1.0, std::abs(r.value))))
        throw ConvergenceError("k_integral_eval: quadrature did not converge");
      v += r.value;
    }
  }
  return std::exp(v);
}

// --------------------------------------------------------------- structure

KreinStructure k_structure(const ArcSet& set) {
  if (!is_regular(set)) throw InputError("k_structure: set is not Lebesgue regular; regularize first");
  KreinStructure out;
  const auto lefts = boundary_left(set);
  out.sigma = ClosedSet::from_points(lefts);
  out.gamma = set;
  for (const auto& a : boundary_right(set)) {
    if (!out.sigma.contains(a)) out.zeros.push_back(a);
  }
  out.poles = out.sigma.isolated_points();
  return out;
}

Transported equivariance_transport(const ArcSet& set, const HalfPlaneAuto& phi) {
  Transported out;
  out.set = pullback_arcset(phi, set);
  out.c = 1.0 / std::abs(KreinProduct(set).eval(phi(cplx(0, 1))).value);
  return out;
}

}  // namespace hplane
