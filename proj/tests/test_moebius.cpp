#include <doctest.h>

#include <cmath>

#include "hplane/error.hpp"
#include "hplane/moebius.hpp"
#include "hplane/numerics.hpp"

using namespace hplane;

TEST_CASE("automorphism examples") {
  const cplx i(0, 1);
  CHECK(std::abs(HalfPlaneAuto::identity()(i) - i) < 1e-15);
  CHECK(std::abs(HalfPlaneAuto(1, 1, 0, 1)(i) - cplx(1, 1)) < 1e-15);
  CHECK(std::abs(HalfPlaneAuto::inversion()(i) - i) < 1e-15);
  CHECK(HalfPlaneAuto::inversion().apply(ExtPoint(0.0)).is_inf());
  CHECK(HalfPlaneAuto::inversion().apply(ExtPoint::infinity()) == ExtPoint(0.0));
  CHECK_THROWS_AS(HalfPlaneAuto(1, 0, 0, -1), InputError);
}

TEST_CASE("inverse and composition") {
  HalfPlaneAuto phi(2, 1, 1, 3);
  auto id = phi.compose(phi.inverse());
  for (auto z : halton_box(200, -10, 10, 0, 10)) {
    CHECK(std::abs(phi.inverse()(phi(z)) - z) < 1e-12 * (1 + std::abs(z)));
    CHECK(std::abs(id(z) - z) < 1e-12 * (1 + std::abs(z)));
    CHECK(phi(z).imag() > 0);
  }
}

TEST_CASE("pullback examples") {
  auto t = HalfPlaneAuto::translation(1);
  CHECK(pullback_arcset(t, ArcSet(Arc(0, 1))) == ArcSet(Arc(-1, 0)));
  CHECK(pullback_arcset(HalfPlaneAuto::inversion(), ArcSet(Arc(1, 2))) == ArcSet(Arc(-1, -0.5)));
  auto w = pullback_arcset(t, ArcSet(Arc(1, 0)));
  CHECK(w == ArcSet(Arc(0, -1)));
  CHECK(w.contains_inf());
}

TEST_CASE("pullback respects unions") {
  HalfPlaneAuto phi(1, 2, -1, 1);
  auto o1 = ArcSet::normalize({Arc(0, 1), Arc(3, 4)});
  auto o2 = ArcSet::normalize({Arc(0.5, 2)});
  CHECK(pullback_arcset(phi, unite(o1, o2)) == unite(pullback_arcset(phi, o1), pullback_arcset(phi, o2)));
}

TEST_CASE("cayley") {
  CayleyMap c(cplx(0, 1));
  CHECK(std::abs(c.forward(cplx(0, 1))) < 1e-15);
  CHECK(std::abs(c.forward(ExtPoint(0.0)) - cplx(-1)) < 1e-15);
  CHECK(c.forward(ExtPoint::infinity()) == cplx(1));
  CHECK(c.inverse_boundary(cplx(1)).is_inf());
  for (double x = -50; x <= 50; x += 0.37) {
    auto w = c.forward(ExtPoint(x));
    CHECK(std::abs(std::abs(w) - 1) < 1e-12);
    CHECK(std::abs(c.inverse_boundary(w).value() - x) < 1e-9 * (1 + x * x));
  }
}

TEST_CASE("disk target map") {
  for (auto [a, b] : {std::pair{cplx(-1), cplx(1)}, std::pair{cplx(0, 1), cplx(1)},
                      std::pair{std::polar(1.0, 2.0), std::polar(1.0, -1.0)}}) {
    DiskTargetMap m(a, b);
    CHECK(std::abs(m(ExtPoint(0.0)) - a) < 1e-14);
    CHECK(std::abs(m(ExtPoint::infinity()) - b) < 1e-14);
    CHECK(std::abs(std::abs(m(ExtPoint(2.5))) - 1) < 1e-14);
    CHECK(std::abs(m(cplx(0.3, 0.2))) < 1);
  }
  CHECK_THROWS_AS(DiskTargetMap(1, 1), InputError);
}
