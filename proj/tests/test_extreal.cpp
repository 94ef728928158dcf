#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hplane/error.hpp"
#include "hplane/extreal.hpp"

using namespace hplane;

TEST_CASE("normalize keeps abutting arcs apart") {
  auto s = ArcSet::normalize({Arc(1, 2), Arc(2, 3)});
  CHECK(s.size() == 2);
  CHECK(regularize(s) == ArcSet(Arc(1, 3)));
  CHECK(ArcSet::normalize({Arc(0, 2), Arc(1, 3)}) == ArcSet(Arc(0, 3)));
}

TEST_CASE("wrap arc contains infinity") {
  auto s = ArcSet::normalize({Arc(1, 0)});
  REQUIRE(s.size() == 1);
  CHECK(s.contains_inf());
  CHECK(s.contains(ExtPoint::infinity()));
  CHECK(s.contains(5.0));
  CHECK_FALSE(s.contains(0.5));
  CHECK(s.arcs()[0] == Arc(1, 0));
}

TEST_CASE("degenerate arc rejected") { CHECK_THROWS_AS(Arc(1, 1), InputError); }

TEST_CASE("regularize merges through infinity") {
  auto s = ArcSet::normalize({Arc(ExtPoint::infinity(), 0), Arc(0, ExtPoint::infinity())});
  CHECK(regularize(s).is_full());
  auto w = ArcSet::normalize({Arc(ExtPoint::infinity(), 0), Arc(1, ExtPoint::infinity())});
  auto r = regularize(w);
  REQUIRE(r.size() == 1);
  CHECK(r.arcs()[0] == Arc(1, 0));
  CHECK(regularize(r) == r);
}

TEST_CASE("complement round trip") {
  auto s = ArcSet::normalize({Arc(0, 1), Arc(2, 3)});
  auto c = s.complement();
  CHECK(c.contains_inf());
  CHECK(c.contains(1.5));
  CHECK_FALSE(c.contains(0.5));
  CHECK(c.complement() == s);
  CHECK(ArcSet().complement().complement() == ArcSet());
  CHECK(ArcSet::full().complement().empty());
}

TEST_CASE("intersection and union") {
  auto x = ArcSet::normalize({Arc(0, 2)});
  auto y = ArcSet::normalize({Arc(1, 3)});
  CHECK(intersect(x, y) == ArcSet(Arc(1, 2)));
  CHECK(unite(x, y) == ArcSet(Arc(0, 3)));
  CHECK(x.is_subset_of(unite(x, y)));
}

TEST_CASE("angle subtended") {
  const cplx i(0, 1);
  CHECK(angle_subtended(ArcSet(Arc(-1, 1)), i) == doctest::Approx(std::numbers::pi / 2));
  CHECK(angle_subtended(ArcSet(), i) == 0.0);
  CHECK(angle_subtended(ArcSet::full(), i) == doctest::Approx(std::numbers::pi));
  // Complementary arcs fill the whole angle.
  const cplx z(0.3, 0.7);
  CHECK(angle_subtended(Arc(1, -1), z) + angle_subtended(Arc(-1, 1), z) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("measure") {
  CHECK(measure(ArcSet::normalize({Arc(0, 1), Arc(2, 4)})) == doctest::Approx(3.0));
  CHECK(std::isinf(measure(ArcSet(Arc(0, ExtPoint::infinity())))));
}

TEST_CASE("cantor generator") {
  ArcGenerator g(CantorComplement{0, 1, 2, false});
  auto arcs = g.enumerate();
  CHECK(arcs.size() == 3);
  auto b = g.boundary_left(2).points;
  std::sort(b.begin(), b.end());
  REQUIRE(b.size() == 3);
  CHECK(b[0].value() == doctest::Approx(1.0 / 9));
  CHECK(b[1].value() == doctest::Approx(1.0 / 3));
  CHECK(b[2].value() == doctest::Approx(7.0 / 9));
  CHECK(g.measure(2) == doctest::Approx(1 - 4.0 / 9));
}

TEST_CASE("closed set isolated points") {
  std::vector<ExtPoint> pts{0.0, 1.0, ExtPoint::infinity()};
  auto c = ClosedSet::from_points(pts);
  CHECK(c.isolated_points().size() == 3);
  auto om = c.complement();
  CHECK(om.size() == 3);
  CHECK_FALSE(is_regular(om));
  CHECK(regularize(om).is_full());
}
