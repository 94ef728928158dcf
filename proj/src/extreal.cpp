#include "hplane/extreal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hplane/error.hpp"

namespace hplane {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_lo(ExtPoint b) { return b.value_or(-kInf); }
double to_hi(ExtPoint a) { return a.value_or(kInf); }
ExtPoint from_bound(double x) { return std::isinf(x) ? ExtPoint::infinity() : ExtPoint(x); }

bool near(double x, double y) {
  if (std::isinf(x) || std::isinf(y)) return x == y;
  return std::abs(x - y) <= kEndpointTol;
}

// arg(z - t) for Im z > 0, with the limits 0 at t = -inf and π at t = +inf.
double theta(cplx z, double t) {
  if (t == -kInf) return 0.0;
  if (t == kInf) return std::numbers::pi;
  return std::atan2(z.imag(), z.real() - t);
}

double span_angle(const Span& s, cplx z) {
  if (std::isfinite(s.lo) && std::isfinite(s.hi)) return std::arg((z - s.hi) / (z - s.lo));
  return theta(z, s.hi) - theta(z, s.lo);
}

}  // namespace

// ---------------------------------------------------------------- ExtPoint

ExtPoint::ExtPoint(double v) {
  if (std::isnan(v)) throw InputError("ExtPoint: NaN is not a point of R ∪ {∞}");
  if (std::isinf(v)) {
    inf_ = true;
  } else {
    v_ = v;
  }
}

double ExtPoint::value() const {
  if (inf_) throw InputError("ExtPoint::value called on ∞");
  return v_;
}

std::strong_ordering operator<=>(const ExtPoint& x, const ExtPoint& y) {
  if (x.inf_ || y.inf_) return x.inf_ <=> y.inf_;
  if (x.v_ < y.v_) return std::strong_ordering::less;
  if (x.v_ > y.v_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtPoint::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExtPoint& p) { return os << p.str(); }

// --------------------------------------------------------------------- Arc

Arc::Arc(ExtPoint b, ExtPoint a) : kind_(Kind::Proper), b_(b), a_(a) {
  if (b == a) throw InputError("Arc: endpoints must differ (got " + b.str() + ")");
}

Arc Arc::punctured(ExtPoint p) {
  Arc arc(Kind::Proper);
  arc.b_ = p;
  arc.a_ = p;
  return arc;
}

bool Arc::contains_inf() const {
  switch (kind_) {
    case Kind::Empty: return false;
    case Kind::Full: return true;
    case Kind::Proper: break;
  }
  if (b_.is_inf() || a_.is_inf()) return false;
  return b_.value() >= a_.value();
}

std::vector<Span> Arc::spans() const {
  switch (kind_) {
    case Kind::Empty: return {};
    case Kind::Full: return {{-kInf, kInf}};
    case Kind::Proper: break;
  }
  if (b_.is_inf() || a_.is_inf() || b_.value() < a_.value()) return {{to_lo(b_), to_hi(a_)}};
  // Wrap arc (b, ∞] ∪ [-∞, a), or the punctured circle when b == a.
  return {{-kInf, a_.value()}, {b_.value(), kInf}};
}

bool Arc::contains(ExtPoint x) const {
  if (x.is_inf()) return contains_inf();
  const double v = x.value();
  return std::ranges::any_of(spans(), [v](const Span& s) { return s.lo < v && v < s.hi; });
}

double Arc::length() const {
  if (kind_ == Kind::Empty) return 0.0;
  double total = 0.0;
  for (const auto& s : spans()) total += s.hi - s.lo;
  return total;
}

std::ostream& operator<<(std::ostream& os, const Arc& arc) {
  switch (arc.kind()) {
    case Arc::Kind::Empty: return os << "Empty";
    case Arc::Kind::Full: return os << "Full";
    case Arc::Kind::Proper: break;
  }
  return os << '(' << arc.left() << ", " << arc.right() << ')';
}

// ------------------------------------------------------------------ ArcSet

ArcSet::ArcSet(const Arc& arc) : ArcSet(normalize({arc})) {}

ArcSet ArcSet::full() { return ArcSet({{-kInf, kInf}}, true); }

ArcSet ArcSet::normalize(std::span<const Arc> arcs) {
  std::vector<Span> raw;
  bool inf = false;
  for (const auto& arc : arcs) {
    if (arc.is_full()) return full();
    if (arc.is_empty()) continue;
    inf = inf || arc.contains_inf();
    for (const auto& s : arc.spans()) raw.push_back(s);
  }
  std::ranges::sort(raw, [](const Span& x, const Span& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });

  std::vector<Span> out;
  for (auto s : raw) {
    if (!out.empty()) {
      auto& cur = out.back();
      if (near(s.lo, cur.hi)) {
        s.lo = cur.hi;  // shared endpoint: snap, keep apart
      } else if (s.lo < cur.hi) {
        cur.hi = std::max(cur.hi, s.hi);
        continue;
      }
    }
    out.push_back(s);
  }
  if (inf && out.size() == 1 && out.front().lo == -kInf && out.front().hi == kInf) return full();
  return ArcSet(std::move(out), inf);
}

std::vector<Arc> ArcSet::arcs() const {
  std::vector<Arc> out;
  if (is_full()) {
    out.push_back(Arc::full());
    return out;
  }
  std::size_t first = 0;
  std::size_t last = spans_.size();
  if (inf_) {
    first = 1;
    last = spans_.size() - 1;
  }
  for (std::size_t i = first; i < last; ++i) {
    const auto& s = spans_[i];
    if (s.lo == -kInf && s.hi == kInf) {
      out.push_back(Arc::punctured(ExtPoint::infinity()));
    } else {
      out.emplace_back(from_bound(s.lo), from_bound(s.hi));
    }
  }
  if (inf_) {
    const double b = spans_.back().lo;
    const double a = spans_.front().hi;
    out.push_back(b == a ? Arc::punctured(b) : Arc(b, a));
  }
  return out;
}

bool ArcSet::is_full() const { return inf_ && spans_.size() == 1; }

bool ArcSet::contains(ExtPoint x) const {
  if (x.is_inf()) return inf_;
  const double v = x.value();
  return std::ranges::any_of(spans_, [v](const Span& s) { return s.lo < v && v < s.hi; });
}

bool ArcSet::is_subset_of(const ArcSet& other) const { return intersect(*this, other) == *this; }

ArcSet ArcSet::without_points(std::span<const ExtPoint> points) const {
  std::vector<Span> spans = spans_;
  bool inf = inf_;
  for (const auto& p : points) {
    if (p.is_inf()) {
      inf = false;
      continue;
    }
    const double v = p.value();
    for (std::size_t i = 0; i < spans.size(); ++i) {
      if (spans[i].lo < v && v < spans[i].hi) {
        const Span right{v, spans[i].hi};
        spans[i].hi = v;
        spans.insert(spans.begin() + static_cast<std::ptrdiff_t>(i) + 1, right);
        break;
      }
    }
  }
  return ArcSet(std::move(spans), inf);
}

ClosedSet ArcSet::complement() const {
  ClosedSet out;
  out.inf_ = !inf_;
  if (spans_.empty()) {
    out.pieces_.push_back({-kInf, kInf});
    return out;
  }
  if (spans_.front().lo != -kInf) out.pieces_.push_back({-kInf, spans_.front().lo});
  for (std::size_t i = 1; i < spans_.size(); ++i) out.pieces_.push_back({spans_[i - 1].hi, spans_[i].lo});
  if (spans_.back().hi != kInf) out.pieces_.push_back({spans_.back().hi, kInf});
  return out;
}

ArcSet unite(const ArcSet& x, const ArcSet& y) {
  auto ax = x.arcs();
  const auto ay = y.arcs();
  ax.insert(ax.end(), ay.begin(), ay.end());
  return ArcSet::normalize(ax);
}

ArcSet intersect(const ArcSet& x, const ArcSet& y) {
  std::vector<Span> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.spans_.size() && j < y.spans_.size()) {
    const auto& s = x.spans_[i];
    const auto& t = y.spans_[j];
    const double lo = std::max(s.lo, t.lo);
    const double hi = std::min(s.hi, t.hi);
    if (lo < hi) out.push_back({lo, hi});
    if (s.hi < t.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return ArcSet(std::move(out), x.inf_ && y.inf_);
}

std::ostream& operator<<(std::ostream& os, const ArcSet& set) {
  os << '{';
  bool first = true;
  for (const auto& arc : set.arcs()) {
    if (!first) os << ", ";
    os << arc;
    first = false;
  }
  return os << '}';
}

// --------------------------------------------------------------- ClosedSet

ClosedSet::ClosedSet(std::vector<Span> pieces, bool infinity) : inf_(infinity) {
  std::ranges::sort(pieces, [](const Span& x, const Span& y) { return x.lo < y.lo; });
  for (const auto& p : pieces) {
    if (p.lo > p.hi) throw InputError("ClosedSet: piece with lo > hi");
    if (std::isinf(p.lo) || std::isinf(p.hi)) inf_ = true;
    if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, p.hi);
    } else {
      pieces_.push_back(p);
    }
  }
}

ClosedSet ClosedSet::from_points(std::span<const ExtPoint> points) {
  std::vector<Span> pieces;
  bool inf = false;
  for (const auto& p : points) {
    if (p.is_inf()) {
      inf = true;
    } else {
      pieces.push_back({p.value(), p.value()});
    }
  }
  return ClosedSet(std::move(pieces), inf);
}

bool ClosedSet::contains(ExtPoint x) const {
  if (x.is_inf()) return inf_;
  const double v = x.value();
  return std::ranges::any_of(pieces_, [v](const Span& s) { return s.lo <= v && v <= s.hi; });
}

std::vector<ExtPoint> ClosedSet::isolated_points() const {
  std::vector<ExtPoint> out;
  for (const auto& p : pieces_) {
    if (p.lo == p.hi) out.emplace_back(p.lo);
  }
  const bool unbounded = !pieces_.empty() && (pieces_.front().lo == -kInf || pieces_.back().hi == kInf);
  if (inf_ && !unbounded) out.push_back(ExtPoint::infinity());
  return out;
}

std::vector<Span> ClosedSet::intervals() const {
  std::vector<Span> out;
  for (const auto& p : pieces_) {
    if (p.lo < p.hi) out.push_back(p);
  }
  return out;
}

double ClosedSet::measure() const {
  double total = 0.0;
  for (const auto& p : pieces_) total += p.hi - p.lo;
  return total;
}

ArcSet ClosedSet::complement() const {
  if (pieces_.empty()) return inf_ ? ArcSet({{-kInf, kInf}}, false) : ArcSet::full();
  std::vector<Span> spans;
  if (pieces_.front().lo != -kInf) spans.push_back({-kInf, pieces_.front().lo});
  for (std::size_t i = 1; i < pieces_.size(); ++i) spans.push_back({pieces_[i - 1].hi, pieces_[i].lo});
  if (pieces_.back().hi != kInf) spans.push_back({pieces_.back().hi, kInf});
  return ArcSet(std::move(spans), !inf_);
}

ClosedSet ClosedSet::united(const ClosedSet& other) const {
  auto pieces = pieces_;
  pieces.insert(pieces.end(), other.pieces_.begin(), other.pieces_.end());
  return ClosedSet(std::move(pieces), inf_ || other.inf_);
}

std::ostream& operator<<(std::ostream& os, const ClosedSet& set) {
  os << '{';
  bool first = true;
  for (const auto& p : set.pieces()) {
    if (!first) os << ", ";
    if (p.lo == p.hi) {
      os << ExtPoint(p.lo);
    } else {
      os << '[' << p.lo << ", " << p.hi << ']';
    }
    first = false;
  }
  if (set.contains_inf()) os << (first ? "" : ", ") << "inf";
  return os << '}';
}

// ---------------------------------------------------------- free functions

ArcSet regularize(const ArcSet& set) {
  if (set.is_full() || set.spans_.empty()) return set;
  std::vector<Span> out;
  for (const auto& s : set.spans_) {
    if (!out.empty() && near(s.lo, out.back().hi)) {
      out.back().hi = s.hi;
    } else {
      out.push_back(s);
    }
  }
  // ∞ is adjoined once both of its sides are covered.
  const bool inf = set.inf_ || (out.front().lo == -kInf && out.back().hi == kInf);
  if (inf && out.size() == 1) return ArcSet::full();
  return ArcSet(std::move(out), inf);
}

bool is_regular(const ArcSet& set) { return regularize(set) == set; }

std::vector<ExtPoint> boundary_left(const ArcSet& set) {
  std::vector<ExtPoint> out;
  for (const auto& arc : set.arcs()) {
    if (arc.is_proper()) out.push_back(arc.left());
  }
  return out;
}

std::vector<ExtPoint> boundary_right(const ArcSet& set) {
  std::vector<ExtPoint> out;
  for (const auto& arc : set.arcs()) {
    if (arc.is_proper()) out.push_back(arc.right());
  }
  return out;
}

double angle_subtended(const Arc& arc, cplx z) {
  if (arc.is_empty()) return 0.0;
  if (arc.is_full() || arc.is_punctured()) return std::numbers::pi;
  double total = 0.0;
  for (const auto& s : arc.spans()) total += span_angle(s, z);
  return std::clamp(total, 0.0, std::numbers::pi);
}

double angle_subtended(const ArcSet& set, cplx z) {
  if (set.is_full()) return std::numbers::pi;
  double total = 0.0;
  for (const auto& s : set.spans()) total += span_angle(s, z);
  return std::clamp(total, 0.0, std::numbers::pi);
}

double measure(const ArcSet& set) {
  double total = 0.0;
  for (const auto& s : set.spans()) total += s.hi - s.lo;
  return total;
}

// ------------------------------------------------------------ ArcGenerator

ArcGenerator::ArcGenerator(CantorComplement cantor) : src_(cantor) {
  if (!(cantor.lo < cantor.hi) || !std::isfinite(cantor.lo) || !std::isfinite(cantor.hi)) {
    throw InputError("CantorComplement: base interval must be finite with lo < hi");
  }
  if (cantor.depth && *cantor.depth < 0) throw InputError("CantorComplement: negative depth");
}

std::optional<int> ArcGenerator::depth() const {
  if (is_explicit()) return 0;
  return cantor().depth;
}

std::vector<Arc> ArcGenerator::enumerate(int level) const {
  if (is_explicit()) {
    auto arcs = explicit_set().arcs();
    std::ranges::stable_sort(arcs, [](const Arc& x, const Arc& y) { return x.length() > y.length(); });
    return arcs;
  }
  const auto& c = cantor();
  if (c.depth) level = std::min(level, *c.depth);
  std::vector<Arc> out;
  if (c.exterior) out.emplace_back(c.hi, c.lo);
  // Level k removes the open middle third of each of the 2^(k-1) kept intervals.
  std::vector<Span> kept{{c.lo, c.hi}};
  for (int k = 1; k <= level; ++k) {
    std::vector<Span> next;
    next.reserve(kept.size() * 2);
    for (const auto& s : kept) {
      const double third = (s.hi - s.lo) / 3.0;
      const double m1 = s.lo + third;
      const double m2 = s.hi - third;
      out.emplace_back(m1, m2);
      next.push_back({s.lo, m1});
      next.push_back({m2, s.hi});
    }
    kept = std::move(next);
  }
  return out;
}

std::vector<Arc> ArcGenerator::enumerate() const {
  const auto d = depth();
  if (!d) throw InputError("ArcGenerator: infinite generator needs an explicit level");
  return enumerate(*d);
}

ArcSet ArcGenerator::regularize() const {
  if (is_explicit()) return hplane::regularize(explicit_set());
  const auto& c = cantor();
  if (c.depth) return hplane::regularize(ArcSet::normalize(enumerate(*c.depth)));
  // The removed thirds have full measure in the base interval.
  std::vector<Arc> arcs{Arc(c.lo, c.hi)};
  if (c.exterior) arcs.emplace_back(c.hi, c.lo);
  return hplane::regularize(ArcSet::normalize(arcs));
}

BoundaryDescriptor ArcGenerator::boundary_left(int level) const {
  BoundaryDescriptor out;
  for (const auto& arc : enumerate(level)) {
    if (arc.is_proper()) out.points.push_back(arc.left());
  }
  out.accumulates = !is_explicit() && !cantor().depth;
  return out;
}

double ArcGenerator::measure(int level) const {
  if (is_explicit()) return hplane::measure(explicit_set());
  const auto& c = cantor();
  if (c.exterior) return kInf;
  if (c.depth) level = std::min(level, *c.depth);
  return (c.hi - c.lo) * (1.0 - std::pow(2.0 / 3.0, level));
}

namespace detail {

double cantor_kept_distance(double lo, double hi, int level, double x) {
  if (x <= lo) return lo - x;
  if (x >= hi) return x - hi;
  for (int k = 0; k < level; ++k) {
    const double third = (hi - lo) / 3.0;
    const double m1 = lo + third;
    const double m2 = hi - third;
    if (x <= m1) {
      hi = m1;
    } else if (x >= m2) {
      lo = m2;
    } else {
      return std::min(x - m1, m2 - x);
    }
  }
  return 0.0;
}

}  // namespace detail

}  // namespace hplane
