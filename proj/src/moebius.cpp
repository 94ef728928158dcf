#include "hplane/moebius.hpp"

#include <cmath>
#include <numbers>

#include "hplane/error.hpp"

namespace hplane {

HalfPlaneAuto::HalfPlaneAuto(double a, double b, double c, double d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
    throw InputError("automorphism coefficients must be finite");
  const double det = a * d - b * c;
  if (!(det > 0)) throw InputError("automorphism needs ad - bc > 0");
  const double s = 1.0 / std::sqrt(det);
  a_ = a * s;
  b_ = b * s;
  c_ = c * s;
  d_ = d * s;
}

cplx HalfPlaneAuto::apply(cplx z) const {
  const cplx den = c_ * z + d_;
  if (den == cplx(0.0)) throw InputError("apply: z is the pole of the automorphism");
  return (a_ * z + b_) / den;
}

ExtPoint HalfPlaneAuto::apply(ExtPoint x) const {
  if (x.is_inf()) return c_ == 0.0 ? ExtPoint::infinity() : ExtPoint(a_ / c_);
  const double den = c_ * x.value() + d_;
  if (den == 0.0) return ExtPoint::infinity();
  return (a_ * x.value() + b_) / den;
}

HalfPlaneAuto HalfPlaneAuto::inverse() const { return {d_, -b_, -c_, a_}; }

HalfPlaneAuto HalfPlaneAuto::compose(const HalfPlaneAuto& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

Arc pullback(const HalfPlaneAuto& phi, const Arc& arc) {
  if (!arc.is_proper()) return arc;
  const auto inv = phi.inverse();
  if (arc.is_punctured()) return Arc::punctured(inv.apply(arc.left()));
  // Orientation-preserving on the circle, so (b, a) goes to (φ⁻¹b, φ⁻¹a).
  return Arc(inv.apply(arc.left()), inv.apply(arc.right()));
}

ArcSet pullback_arcset(const HalfPlaneAuto& phi, const ArcSet& set) {
  if (set.is_full()) return set;
  std::vector<Arc> out;
  for (const auto& arc : set.arcs()) out.push_back(pullback(phi, arc));
  return ArcSet::normalize(out);
}

CayleyMap::CayleyMap(cplx zeta) : zeta_(zeta) {
  if (!(zeta.imag() > 0)) throw InputError("cayley: Im zeta must be positive");
}

cplx CayleyMap::forward(cplx z) const { return (z - zeta_) / (z - std::conj(zeta_)); }

cplx CayleyMap::forward(ExtPoint x) const {
  if (x.is_inf()) return 1.0;
  return forward(cplx(x.value(), 0.0));
}

cplx CayleyMap::inverse(cplx w) const {
  if (w == cplx(1.0)) throw InputError("cayley inverse: w = 1 is the image of infinity");
  return (zeta_ - w * std::conj(zeta_)) / (1.0 - w);
}

ExtPoint CayleyMap::inverse_boundary(cplx w) const {
  if (std::abs(std::abs(w) - 1.0) > 1e-9) throw InputError("cayley inverse_boundary: |w| must be 1");
  if (std::abs(w - 1.0) < 1e-15) return ExtPoint::infinity();
  return inverse(w).real();
}

DiskTargetMap::DiskTargetMap(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12 || std::abs(std::abs(beta) - 1.0) > 1e-12)
    throw InputError("disk_target_map: alpha and beta must be unimodular");
  if (std::abs(alpha - beta) <= 1e-12) throw InputError("disk_target_map: alpha must differ from beta");
  double ang = std::arg(alpha / beta);
  if (ang <= 0) ang += 2 * std::numbers::pi;
  p_ = std::polar(1.0, ang / 2);
}

cplx DiskTargetMap::operator()(cplx w) const { return beta_ * (w - p_) / (w - std::conj(p_)); }

cplx DiskTargetMap::operator()(ExtPoint x) const {
  if (x.is_inf()) return beta_;
  return (*this)(cplx(x.value(), 0.0));
}

}  // namespace hplane
