#pragma once

#include <array>

#include "hplane/extreal.hpp"

namespace hplane {

/// z ↦ (az + b)/(cz + d) with ad − bc = 1, an automorphism of ℂ⁺.
class HalfPlaneAuto {
public:
  // Throws InputError unless ad − bc > 0. Coefficients are rescaled to det 1.
  HalfPlaneAuto(double a, double b, double c, double d);

  static HalfPlaneAuto identity() { return {1, 0, 0, 1}; }
  static HalfPlaneAuto translation(double t) { return {1, t, 0, 1}; }
  static HalfPlaneAuto scaling(double s) { return {s, 0, 0, 1}; }
  static HalfPlaneAuto inversion() { return {0, -1, 1, 0}; }  // z ↦ −1/z

  // Throws InputError at the pole z = −d/c; use the ExtPoint overload there.
  [[nodiscard]] cplx apply(cplx z) const;
  [[nodiscard]] ExtPoint apply(ExtPoint x) const;
  [[nodiscard]] cplx operator()(cplx z) const { return apply(z); }

  [[nodiscard]] HalfPlaneAuto inverse() const;
  // (this ∘ other)(z) = this(other(z)).
  [[nodiscard]] HalfPlaneAuto compose(const HalfPlaneAuto& other) const;
  [[nodiscard]] std::array<double, 4> coefficients() const { return {a_, b_, c_, d_}; }

private:
  double a_, b_, c_, d_;
};

Arc pullback(const HalfPlaneAuto& phi, const Arc& arc);
// φ⁻¹(O) as a canonical set.
ArcSet pullback_arcset(const HalfPlaneAuto& phi, const ArcSet& set);

/// Cayley transform w = (z − ζ)/(z − ζ̄) of ℂ⁺ onto the unit disk; ζ ↦ 0,
/// ∞ ↦ 1.
class CayleyMap {
public:
  explicit CayleyMap(cplx zeta);

  [[nodiscard]] cplx zeta() const { return zeta_; }
  [[nodiscard]] cplx forward(cplx z) const;
  [[nodiscard]] cplx forward(ExtPoint x) const;
  // Inverse on the open disk; throws InputError at w = 1.
  [[nodiscard]] cplx inverse(cplx w) const;
  // Inverse on the unit circle; w = 1 gives ∞. Throws when |w| is not 1.
  [[nodiscard]] ExtPoint inverse_boundary(cplx w) const;

private:
  cplx zeta_;
};

/// m(w) = β (w − p)/(w − p̄) with p = e^{iθ₀}, e^{2iθ₀} = α/β, θ₀ ∈ (0, π).
/// Maps ℂ⁺ onto the unit disk with m(0) = α and m(∞) = β.
class DiskTargetMap {
public:
  DiskTargetMap(cplx alpha, cplx beta);

  [[nodiscard]] cplx alpha() const { return alpha_; }
  [[nodiscard]] cplx beta() const { return beta_; }
  [[nodiscard]] cplx pole() const { return std::conj(p_); }
  [[nodiscard]] cplx operator()(cplx w) const;
  [[nodiscard]] cplx operator()(ExtPoint x) const;

private:
  cplx alpha_, beta_, p_;
};

}  // namespace hplane
