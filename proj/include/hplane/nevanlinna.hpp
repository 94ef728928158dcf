#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hplane/extreal.hpp"
#include "hplane/local.hpp"
#include "hplane/numerics.hpp"

namespace hplane {

struct Atom {
  double t;
  double w;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// Constant density on [lo, hi].
struct DensityPiece {
  double lo;
  double hi;
  double density;
  friend bool operator==(const DensityPiece&, const DensityPiece&) = default;
};

/// Finite positive measure: atoms plus piecewise constant density. A Cantor
/// depth k adds the 2^k atoms of weight 2^-k at the left endpoints of the
/// kept intervals of [0, 1].
class Measure {
public:
  Measure() = default;
  explicit Measure(std::vector<Atom> atoms, std::vector<DensityPiece> ac = {},
                   std::optional<int> cantor_depth = std::nullopt);

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] const std::vector<DensityPiece>& ac() const { return ac_; }
  [[nodiscard]] std::optional<int> cantor_depth() const { return cantor_depth_; }
  [[nodiscard]] double total_mass() const;
  [[nodiscard]] bool is_atomic() const { return ac_.empty(); }
  [[nodiscard]] ClosedSet support() const;

private:
  std::vector<Atom> atoms_;  // sorted by t
  std::vector<DensityPiece> ac_;
  std::optional<int> cantor_depth_;
};

/// f(z) = αz + β + ∫ (1 + zt)/(t − z) dρ(t).
class NevanlinnaRep {
public:
  NevanlinnaRep(double alpha, double beta, Measure rho = {});

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] const Measure& rho() const { return rho_; }

  // Im z > 0, or real z; an atom gives (inf, 0), a density interior point
  // the boundary value from above.
  [[nodiscard]] cplx eval(cplx z) const;
  [[nodiscard]] cplx operator()(cplx z) const { return eval(z); }
  [[nodiscard]] cplx derivative(cplx z) const;
  // Leading behaviour at a real point outside the density pieces.
  [[nodiscard]] LocalValue eval_local(ExtPoint x) const;
  [[nodiscard]] ExtPoint eval_real(ExtPoint x) const { return eval_local(x).value(); }
  // f(∞); requires α = 0.
  [[nodiscard]] double value_at_infinity() const;
  // Support of ρ, plus ∞ when α > 0.
  [[nodiscard]] ClosedSet sigma() const;

private:
  double alpha_;
  double beta_;
  Measure rho_;
};

using Evaluator = std::function<cplx(cplx)>;

struct LadderOptions {
  std::vector<double> eps = default_eps_ladder();
  double tol = 1e-6;  // consistency of the last two extrapolants
};

double recover_alpha(const Evaluator& f, double tol = 1e-6);
double recover_beta(const Evaluator& f);
double stieltjes_density(const Evaluator& f, double t, double eps);
double stieltjes_density_limit(const Evaluator& f, double t, const LadderOptions& opts = {});
double recover_atom(const Evaluator& f, double t0, const LadderOptions& opts = {});

using LocalEvaluator = std::function<LocalValue(ExtPoint)>;

struct GammaResult {
  ArcSet gamma;
  std::vector<ExtPoint> zeros;
  bool infinity_in_gamma = false;
};

/// Γ(f) for a function increasing on every component of Ω.
GammaResult find_gamma(const LocalEvaluator& f, const ArcSet& omega, BisectOptions opts = {});

struct AnalysisResult {
  ClosedSet sigma;
  ArcSet omega;
  ArcSet gamma;
  std::vector<ExtPoint> zeros;
  bool infinity_in_gamma = false;
};

AnalysisResult analyze(const NevanlinnaRep& rep);

/// G_μ(z) = ∫ dμ(t)/(z − t).
cplx cauchy_transform(const Measure& mu, cplx z);

struct BooleResult {
  double plus = 0.0;   // |{G > y}|
  double minus = 0.0;  // |{G < −y}|
  std::vector<double> plus_roots;   // solutions of G = y
  std::vector<double> minus_roots;  // solutions of G = −y
};

BooleResult boole_superlevel_measure(const Measure& mu, double y);

struct LetacResult {
  double length = 0.0;
  std::vector<std::pair<double, double>> branches;  // (root of f = c, root of f = d)
};

LetacResult letac_pushforward_check(const NevanlinnaRep& rep, double c, double d);

}  // namespace hplane
