#pragma once

#include <cstddef>
#include <vector>

#include "hplane/extreal.hpp"
#include "hplane/local.hpp"
#include "hplane/moebius.hpp"

namespace hplane {

// Distance from X below which real evaluation is refused.
inline constexpr double kRealGuard = 1e-9;

/// Single factor p_J, normalized by |p_J(i)| = 1 and negative exactly on J.
/// At the real pole b the value is (inf, 0).
cplx p_eval(const Arc& J, cplx z);
LocalValue p_local(const Arc& J, ExtPoint x);
/// Principal log of p_J(z) for Im z > 0; Im part is the subtended angle.
cplx log_p(const Arc& J, cplx z);

bool is_infinite(cplx w);

struct Truncation {
  std::size_t max_factors = std::size_t{1} << 22;
  double tail_tol = 1e-12;
};

struct KreinValue {
  cplx value;
  double tail_bound = 0.0;
  std::size_t factors = 0;
  int level = 0;  // generator level reached; 0 for explicit sets
};

class KreinProduct {
public:
  explicit KreinProduct(ArcGenerator source, Truncation trunc = {});

  [[nodiscard]] const ArcGenerator& source() const { return source_; }
  [[nodiscard]] const Truncation& truncation() const { return trunc_; }
  [[nodiscard]] bool is_explicit() const { return source_.is_explicit(); }

  // Im z > 0, or real z off the closure of the enumerated arcs' poles.
  // Throws TailNotCertified when the remainder cannot be bounded below τ.
  [[nodiscard]] KreinValue eval(cplx z) const;
  [[nodiscard]] cplx operator()(cplx z) const { return eval(z).value; }
  // Σ log_p(J, z) over the enumerated arcs; Im z > 0, explicit sets only.
  [[nodiscard]] cplx log_eval(cplx z) const;
  // Exact local behaviour at a real point; explicit sets only.
  [[nodiscard]] LocalValue eval_local(ExtPoint x) const;
  [[nodiscard]] ExtPoint eval_real(ExtPoint x) const { return eval_local(x).value(); }

private:
  [[nodiscard]] KreinValue eval_cantor(cplx z) const;

  ArcGenerator source_;
  Truncation trunc_;
  std::vector<Arc> arcs_;  // explicit arcs, decreasing length
};

/// e^{v(z)} with v = ∫_O (1 + tz)/(t − z) dt/(1 + t²) by adaptive quadrature.
cplx k_integral_eval(const ArcSet& set, cplx z);

struct KreinStructure {
  ClosedSet sigma;
  ArcSet gamma;
  std::vector<ExtPoint> zeros;
  std::vector<ExtPoint> poles;
};

/// σ, Γ, zeros and poles of k_O for a Lebesgue regular finite O.
KreinStructure k_structure(const ArcSet& set);

struct Transported {
  ArcSet set;
  double c = 1.0;
};

/// φ⁻¹(O) and c with k_{φ⁻¹(O)} = c · k_O ∘ φ.
Transported equivariance_transport(const ArcSet& set, const HalfPlaneAuto& phi);

}  // namespace hplane
