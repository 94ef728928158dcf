#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hplane/cert.hpp"
#include "hplane/factor.hpp"
#include "hplane/interp.hpp"
#include "hplane/moebius.hpp"
#include "hplane/nevanlinna.hpp"

namespace hplane {

using Rng = std::mt19937_64;

/// Up to n random arcs with endpoints in [−10, 10], normalized.
ArcSet random_arcset(Rng& rng, int n);
/// Atoms in [−5, 5] at least 0.1 apart, weights in [0.1, 2].
std::vector<Atom> random_atoms(Rng& rng, int n);
NevanlinnaRep random_atomic_rep(Rng& rng, int max_atoms, std::optional<double> alpha = std::nullopt);
HalfPlaneAuto random_automorphism(Rng& rng);

// Invariant suites behind `hplane check`. Each entry is one invariant with
// the worst residual over its samples.
std::vector<Certification> suite_krein_props(const ArcSet& O, std::uint64_t seed);
std::vector<Certification> suite_nevanlinna_roundtrip(const std::optional<NevanlinnaRep>& rep, std::uint64_t seed,
                                                      int count, double tol);
std::vector<Certification> suite_boole(const Measure& mu, const std::vector<double>& ys, double tol);
std::vector<Certification> suite_letac(const std::optional<NevanlinnaRep>& rep, std::optional<std::pair<double, double>> cd,
                                       std::uint64_t seed, int count, double tol);
std::vector<Certification> suite_factor_posts(const std::optional<PickFunction>& f, std::uint64_t seed, int count);
std::vector<Certification> suite_interp_equivalence(const std::optional<InterpProblem>& p, std::uint64_t seed, int count);

}  // namespace hplane
