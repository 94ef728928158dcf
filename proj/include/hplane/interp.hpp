#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hplane/cert.hpp"
#include "hplane/factor.hpp"

namespace hplane {

/// Prescribed zeros A, poles B and allowed singular points Y; pairwise disjoint.
struct InterpProblem {
  std::vector<ExtPoint> zeros;
  std::vector<ExtPoint> poles;
  std::vector<ExtPoint> singular;

  // Throws InputError on repeated or shared points.
  void validate() const;
};

struct InterlacingWitness {
  ExtPoint first;
  ExtPoint second;
  bool zeros = true;  // two zeros with no pole between, or two poles
  // Component of the complement of Y; both empty for the full circle.
  std::optional<ExtPoint> c;
  std::optional<ExtPoint> d;
  std::string message;
};

struct InterlacingResult {
  bool ok = true;
  std::optional<InterlacingWitness> witness;
};

/// Interlacing on every component of the complement of Y. With Y empty the
/// circle is read cyclically: zeros and poles alternate all the way round.
InterlacingResult check_interlacing(const InterpProblem& p);

/// Left-to-right sweep per component, without checking interlacing.
ArcSet sweep_arcs(const InterpProblem& p);

/// The regular O of the sweep. Throws InputError when interlacing fails.
ArcSet construct_O(const InterpProblem& p);

/// O regular, A ⊆ right endpoints ⊆ A∪Y and B ⊆ left endpoints ⊆ B∪Y.
bool satisfies_condition2(const InterpProblem& p, const ArcSet& O);

/// Exhaustive search for a set satisfying condition (2). Exponential; at
/// most 10 points in A∪B∪Y.
std::optional<ArcSet> search_condition2(const InterpProblem& p);

struct InterpSolution {
  ArcSet O;
  PickFunction f;
  std::vector<Certification> certs;
  std::vector<ExtPoint> poles_at_singular;
  std::vector<ExtPoint> zeros_at_singular;

  [[nodiscard]] bool ok() const;
};

/// f = k_O with O = construct_O(p), certified.
InterpSolution build_function(const InterpProblem& p);

struct Realizability {
  bool subset = false;   // O ⊆ Ω
  bool regular = false;  // O regular
  bool omega = false;    // Ω = Ω₁∖X
  std::optional<PickFunction> f;
  std::vector<Certification> certs;

  [[nodiscard]] bool ok() const;
};

/// Checks the three conditions; on success builds f = k_O e^v with v the
/// ½-density integral over the complement of Ω₁ and certifies Ω(f), Γ(f).
Realizability realizable_pair(const ArcSet& omega, const ArcSet& O);

struct DiskProblem {
  std::vector<cplx> zeros;
  std::vector<cplx> poles;
  std::vector<cplx> singular;
  cplx alpha{-1.0, 0.0};
  cplx beta{1.0, 0.0};
  cplx zeta{0.0, 1.0};
};

struct DiskSolution {
  InterpProblem pulled;
  ArcSet O;
  std::function<cplx(cplx)> theta;
  std::vector<Certification> certs;

  [[nodiscard]] bool ok() const;
};

/// θ = m ∘ k_O ∘ C⁻¹ for the pulled-back problem; |θ| < 1 inside, |θ| = 1 on
/// the circle off Z, θ = α on A′ and β on B′.
DiskSolution disk_interpolate(const DiskProblem& dp);

/// Random problems for the equivalence checks: distinct half-integer points
/// in [−30, 30], sometimes ∞.
InterpProblem random_problem(std::mt19937& rng, int max_points, int max_singular);
/// Random interlaced problem with |A|, |B| ≤ max_each.
InterpProblem random_interlaced_problem(std::mt19937& rng, int max_each, int max_singular);

}  // namespace hplane
