#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hplane {

using cplx = std::complex<double>;

// Endpoints closer than this are treated as the same point when deciding
// abutment and overlap.
inline constexpr double kEndpointTol = 1e-12;

/// A point of the circle R ∪ {∞}.
///
/// Finite values are ordered as usual; ∞ sorts after every finite value, so
/// a sorted list walks the circle once starting just after ∞.
class ExtPoint {
public:
  constexpr ExtPoint() = default;
  // ±inf doubles both map to the single point ∞; NaN is rejected.
  ExtPoint(double v);  // NOLINT(google-explicit-constructor)

  static constexpr ExtPoint infinity() {
    ExtPoint p;
    p.inf_ = true;
    return p;
  }

  [[nodiscard]] constexpr bool is_inf() const { return inf_; }
  [[nodiscard]] constexpr bool is_finite() const { return !inf_; }
  // Throws InputError when called on ∞.
  [[nodiscard]] double value() const;
  // Finite value, or the given double for ∞.
  [[nodiscard]] constexpr double value_or(double at_inf) const { return inf_ ? at_inf : v_; }

  friend bool operator==(const ExtPoint& x, const ExtPoint& y) {
    return x.inf_ == y.inf_ && (x.inf_ || x.v_ == y.v_);
  }
  friend std::strong_ordering operator<=>(const ExtPoint& x, const ExtPoint& y);

  [[nodiscard]] std::string str() const;

private:
  double v_ = 0.0;
  bool inf_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtPoint& p);

// Open interval (lo, hi) of the real line; lo may be -inf and hi +inf.
struct Span {
  double lo;
  double hi;
  friend bool operator==(const Span&, const Span&) = default;
};

/// An open arc (b, a) of R ∪ {∞}, traversed in increasing direction from b.
///
/// b < a finite is an ordinary interval; b > a wraps through ∞; an endpoint
/// equal to ∞ gives a half line. b == a can only be built through
/// punctured() and denotes the circle minus that point. Empty and Full are
/// the two set-level degenerate values.
class Arc {
public:
  enum class Kind { Empty, Proper, Full };

  // Throws InputError when b == a.
  Arc(ExtPoint b, ExtPoint a);

  static Arc empty() { return Arc(Kind::Empty); }
  static Arc full() { return Arc(Kind::Full); }
  static Arc punctured(ExtPoint p);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_empty() const { return kind_ == Kind::Empty; }
  [[nodiscard]] bool is_full() const { return kind_ == Kind::Full; }
  [[nodiscard]] bool is_proper() const { return kind_ == Kind::Proper; }
  [[nodiscard]] bool is_punctured() const { return is_proper() && b_ == a_; }

  // Left (pole) and right (zero) endpoints; meaningful for proper arcs.
  [[nodiscard]] ExtPoint left() const { return b_; }
  [[nodiscard]] ExtPoint right() const { return a_; }

  // True when ∞ is an interior point of the arc.
  [[nodiscard]] bool contains_inf() const;
  [[nodiscard]] bool contains(ExtPoint x) const;
  [[nodiscard]] double length() const;
  [[nodiscard]] std::vector<Span> spans() const;

  friend bool operator==(const Arc&, const Arc&) = default;

private:
  explicit Arc(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Empty;
  ExtPoint b_;
  ExtPoint a_;
};

std::ostream& operator<<(std::ostream& os, const Arc& arc);

class ClosedSet;

/// Canonical finite union of pairwise disjoint open arcs.
///
/// Stored as sorted disjoint open spans of R plus a flag for the point ∞.
/// When the flag is set the first span starts at -inf and the last ends at
/// +inf; the two are read back as one wrap arc. Abutting spans stay apart.
class ArcSet {
public:
  ArcSet() = default;
  explicit ArcSet(const Arc& arc);

  static ArcSet full();
  // Canonical union of the given arcs. Overlaps are merged, shared
  // endpoints are kept.
  static ArcSet normalize(std::span<const Arc> arcs);
  static ArcSet normalize(std::initializer_list<Arc> arcs) {
    return normalize(std::span<const Arc>(arcs.begin(), arcs.size()));
  }

  [[nodiscard]] std::vector<Arc> arcs() const;
  [[nodiscard]] const std::vector<Span>& spans() const { return spans_; }
  [[nodiscard]] bool contains_inf() const { return inf_; }
  [[nodiscard]] bool empty() const { return spans_.empty() && !inf_; }
  [[nodiscard]] bool is_full() const;
  [[nodiscard]] std::size_t size() const { return arcs().size(); }

  [[nodiscard]] bool contains(ExtPoint x) const;
  [[nodiscard]] bool is_subset_of(const ArcSet& other) const;
  [[nodiscard]] ArcSet without_points(std::span<const ExtPoint> points) const;
  [[nodiscard]] ClosedSet complement() const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

  friend ArcSet unite(const ArcSet& x, const ArcSet& y);
  friend ArcSet intersect(const ArcSet& x, const ArcSet& y);

private:
  ArcSet(std::vector<Span> spans, bool inf) : spans_(std::move(spans)), inf_(inf) {}
  friend ArcSet regularize(const ArcSet& set);
  friend class ClosedSet;

  std::vector<Span> spans_;
  bool inf_ = false;
};

std::ostream& operator<<(std::ostream& os, const ArcSet& set);

/// Closed subset of R ∪ {∞} made of finitely many closed pieces.
///
/// Pieces are sorted and pairwise separated; a degenerate piece [x, x] is an
/// isolated point. A piece may be unbounded only when ∞ is in the set.
class ClosedSet {
public:
  ClosedSet() = default;
  // Builds from raw pieces (merging overlaps and contacts) and a flag for ∞.
  ClosedSet(std::vector<Span> pieces, bool infinity);
  static ClosedSet from_points(std::span<const ExtPoint> points);

  [[nodiscard]] const std::vector<Span>& pieces() const { return pieces_; }
  [[nodiscard]] bool contains_inf() const { return inf_; }
  [[nodiscard]] bool empty() const { return pieces_.empty() && !inf_; }
  [[nodiscard]] bool contains(ExtPoint x) const;
  [[nodiscard]] std::vector<ExtPoint> isolated_points() const;
  // Pieces of positive length.
  [[nodiscard]] std::vector<Span> intervals() const;
  [[nodiscard]] double measure() const;
  [[nodiscard]] ArcSet complement() const;
  [[nodiscard]] ClosedSet united(const ClosedSet& other) const;

  friend bool operator==(const ClosedSet&, const ClosedSet&) = default;

private:
  friend class ArcSet;
  std::vector<Span> pieces_;
  bool inf_ = false;
};

std::ostream& operator<<(std::ostream& os, const ClosedSet& set);

/// Lebesgue regularization of an explicit set: arcs sharing an endpoint are
/// merged, including the shared endpoint ∞. Idempotent.
ArcSet regularize(const ArcSet& set);
bool is_regular(const ArcSet& set);

/// Left endpoints b of the arcs, in arc order.
std::vector<ExtPoint> boundary_left(const ArcSet& set);
/// Right endpoints a of the arcs, in arc order.
std::vector<ExtPoint> boundary_right(const ArcSet& set);

/// Im z · ∫_O dt / |t - z|², the angle at z subtended by O. Result in [0, π].
double angle_subtended(const ArcSet& set, cplx z);
double angle_subtended(const Arc& arc, cplx z);

/// Total length; +inf if some arc is unbounded.
double measure(const ArcSet& set);

/// Removed middle thirds of [lo, hi], optionally together with the exterior
/// arc (hi, lo) through ∞. An empty depth means the full infinite set.
struct CantorComplement {
  double lo = 0.0;
  double hi = 1.0;
  std::optional<int> depth;
  bool exterior = false;

  friend bool operator==(const CantorComplement&, const CantorComplement&) = default;
};

struct BoundaryDescriptor {
  std::vector<ExtPoint> points;   // enumerated part
  bool accumulates = false;       // true when points accumulate on a residual set
};

/// Source of arcs for a Krein product: an explicit set or a generator.
class ArcGenerator {
public:
  ArcGenerator(ArcSet set) : src_(std::move(set)) {}                 // NOLINT
  ArcGenerator(CantorComplement cantor);                             // NOLINT

  [[nodiscard]] bool is_explicit() const { return std::holds_alternative<ArcSet>(src_); }
  [[nodiscard]] const ArcSet& explicit_set() const { return std::get<ArcSet>(src_); }
  [[nodiscard]] const CantorComplement& cantor() const { return std::get<CantorComplement>(src_); }

  // Levels available; nullopt for an infinite generator.
  [[nodiscard]] std::optional<int> depth() const;
  // Arcs in decreasing length order, cut at the given level for generators.
  [[nodiscard]] std::vector<Arc> enumerate(int level) const;
  [[nodiscard]] std::vector<Arc> enumerate() const;
  // Symbolic regularization.
  [[nodiscard]] ArcSet regularize() const;
  [[nodiscard]] BoundaryDescriptor boundary_left(int level) const;
  [[nodiscard]] double measure(int level) const;

private:
  std::variant<ArcSet, CantorComplement> src_;
};

namespace detail {
// Distance from the point x to the union of kept closed intervals at the
// given Cantor level inside [lo, hi].
double cantor_kept_distance(double lo, double hi, int level, double x);
}  // namespace detail

}  // namespace hplane
