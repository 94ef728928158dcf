#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hplane/krein.hpp"
#include "hplane/nevanlinna.hpp"

namespace hplane {

// Constant ψ on the closed interval [lo, hi]; the bounds may be infinite.
struct PsiPiece {
  double lo;
  double hi;
  double value;
  friend bool operator==(const PsiPiece&, const PsiPiece&) = default;
};

/// h(z) = γ + Σ ψ_k ∫_{piece_k} (1 + zt)/(t − z) dt/(1 + t²).
class ExpRep {
public:
  ExpRep() = default;
  ExpRep(double gamma, std::vector<PsiPiece> pieces);

  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] const std::vector<PsiPiece>& pieces() const { return pieces_; }
  // Pieces where ψ = 1; these can carry negative values of e^h.
  [[nodiscard]] bool has_unit_piece() const;
  // Closures of the pieces with ψ > 0.
  [[nodiscard]] ClosedSet support() const;

  // Im z > 0, or real z off the piece endpoints (boundary value from above).
  [[nodiscard]] cplx h(cplx z) const;
  // e^h at a real point off the support; ∞ allowed.
  [[nodiscard]] double exp_real(ExtPoint x) const;

private:
  double gamma_ = 0.0;
  std::vector<PsiPiece> pieces_;
};

struct ExpValue {
  cplx h;
  cplx exp_h;
};

ExpValue exp_eval(const ExpRep& e, cplx z);

class PickFunction;
using PickPtr = std::shared_ptr<const PickFunction>;

/// A member of the class ℋ in one of several concrete forms.
class PickFunction {
public:
  struct Rep {
    NevanlinnaRep rep;
  };
  // c · k_O · e^h
  struct Composite {
    double c;
    KreinProduct k;
    std::optional<ExpRep> exp;
  };
  // base / k_removed
  struct Quotient {
    PickPtr base;
    ArcSet removed;
    KreinProduct k;
  };
  // Opaque evaluator with a user-supplied σ.
  struct BlackBox {
    Evaluator f;
    ClosedSet sigma;
    std::string name;
  };
  using Form = std::variant<Rep, Composite, Quotient, BlackBox>;

  static PickFunction rep(NevanlinnaRep rep);
  static PickFunction composite(double c, KreinProduct k, std::optional<ExpRep> exp = std::nullopt);
  static PickFunction quotient(PickFunction base, ArcSet removed);
  static PickFunction black_box(Evaluator f, ClosedSet sigma, std::string name = "black_box");

  [[nodiscard]] const Form& form() const { return form_; }
  [[nodiscard]] std::string kind() const;

  // Im z > 0.
  [[nodiscard]] cplx eval(cplx z) const;
  [[nodiscard]] cplx operator()(cplx z) const { return eval(z); }
  // Leading behaviour at a real point of Ω, or at an isolated point of σ.
  [[nodiscard]] LocalValue eval_local(ExtPoint x) const;
  [[nodiscard]] ExtPoint eval_real(ExtPoint x) const { return eval_local(x).value(); }
  [[nodiscard]] ClosedSet sigma() const;
  [[nodiscard]] ArcSet omega() const { return sigma().complement(); }

private:
  explicit PickFunction(Form f) : form_(std::move(f)) {}
  Form form_;
};

/// σ, Ω and Γ of any form; Γ is structural for Composite forms and found by
/// component-wise bisection otherwise.
AnalysisResult analyze(const PickFunction& f);

/// 10³ quasi-random points of [−10, 10] × (0, 10] plus 10² points at
/// Im z = 1e−4 near the finite part of σ.
std::vector<cplx> certification_grid(const ClosedSet& sigma);

/// Interior points of each component of Ω, uniform in θ = atan x; ∞
/// first when it lies in Ω.
std::vector<ExtPoint> omega_samples(const ArcSet& omega, int per_component);

/// Smallest Im f over the certification grid.
double min_imag_on_grid(const PickFunction& f);

/// g with f = p_J g. J must lie in Γ(f).
PickFunction divide_single(const PickFunction& f, const Arc& J);

struct PostCheck {
  std::string name;
  bool ok = false;
  double residual = 0.0;
  std::string detail;
};

struct Factorization {
  ArcSet gamma;
  KreinProduct k;
  PickFunction g;
  std::vector<PostCheck> posts;
  [[nodiscard]] bool ok() const;
};

/// f = k_{Γ(f)} g with the posts verified. Throws CertificationError on a
/// failed post unless `throw_on_failure` is false.
Factorization factorize(const PickFunction& f, bool throw_on_failure = true);

struct ConstantFactor {
  double c = 0.0;
  ArcSet gamma;
  double residual = 0.0;  // max |f/(c k) − 1| on the grid
  cplx worst;             // where the residual is attained
  bool ok = false;
};

/// c = |f(i)| with f = c·k_{Γ(f)}, for σ(f) of measure zero.
ConstantFactor constant_factor_check(const PickFunction& f, double tol = 1e-9);

struct ComposeResult {
  PickFunction f;
  double min_imag = 0.0;
  double max_arg = 0.0;
  bool ok = false;
};

/// k_O e^h as a member of ℋ; ψ pieces must avoid O and ψ < 1.
ComposeResult compose_in_class(const ArcSet& O, const ExpRep& e);

/// lim arg g(t + iε)/π over the ε ladder, clamped to [0, 1].
double psi_recover(const Evaluator& g, double t, const LadderOptions& opts = {});

/// Built-in black boxes: "z_plus_i", "z_plus_sqrt_z2_minus_1".
PickFunction builtin_black_box(const std::string& name);

}  // namespace hplane
