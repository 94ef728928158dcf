#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hplane/error.hpp"
#include "hplane/krein.hpp"
#include "hplane/numerics.hpp"

using namespace hplane;

namespace {
const cplx I(0, 1);
const ExtPoint INF = ExtPoint::infinity();

std::vector<Arc> sample_arcs() {
  return {Arc(0, 1), Arc(-3, 2.5), Arc(INF, 0), Arc(INF, -2), Arc(1, INF), Arc(-1, INF),
          Arc(1, 0), Arc(4, -4), Arc::punctured(2), Arc::full()};
}
}  // namespace

TEST_CASE("p_J normalization and sign") {
  for (const auto& J : sample_arcs()) {
    CHECK(std::abs(std::abs(p_eval(J, I)) - 1) < 1e-12);
    for (double x = -7.9; x < 8; x += 0.1) {
      if (J.is_proper() && (J.left() == ExtPoint(x) || J.right() == ExtPoint(x))) continue;
      const cplx v = p_eval(J, x);
      CHECK(v.imag() == 0.0);
      if (J.contains(x)) CHECK(v.real() < 0);
      else if (!J.is_full()) CHECK(v.real() > 0);
    }
  }
}

TEST_CASE("p_J examples") {
  CHECK(p_eval(Arc(0, 1), 0.5).real() < 0);
  CHECK(p_eval(Arc(INF, 0), 3.0).real() == doctest::Approx(3.0));
  for (auto z : halton_box(20, -3, 3, 0, 3)) {
    CHECK(std::abs(p_eval(Arc(0, INF), z) + 1.0 / z) < 1e-14 * (1 + std::abs(1.0 / z)));
    // wrap arc is −1/p of the complementary interval
    CHECK(std::abs(p_eval(Arc(2, -1), z) + 1.0 / p_eval(Arc(-1, 2), z)) < 1e-13);
  }
  CHECK(is_infinite(p_eval(Arc(0, 1), 0.0)));
  CHECK(p_eval(Arc::empty(), I) == cplx(1));
  CHECK(p_eval(Arc::full(), I) == cplx(-1));
}

TEST_CASE("log_p against closed-form antiderivative") {
  for (auto z : halton_box(200, -5, 5, 0, 5)) {
    for (auto [b, a] : {std::pair{0.0, 1.0}, std::pair{-2.0, 3.0}, std::pair{0.5, 0.75}}) {
      const cplx ref = std::log((a - z) / (b - z)) - 0.5 * std::log((1 + a * a) / (1 + b * b));
      CHECK(std::abs(log_p(Arc(b, a), z) - ref) < 1e-12);
    }
    for (const auto& J : sample_arcs()) {
      const cplx l = log_p(J, z);
      CHECK(std::abs(std::exp(l) - p_eval(J, z)) < 1e-12 * std::abs(p_eval(J, z)));
      CHECK(l.imag() >= 0);
      CHECK(l.imag() <= std::numbers::pi);
    }
  }
  CHECK(log_p(Arc(-1, 1), I).imag() == doctest::Approx(std::numbers::pi / 2));
  CHECK(log_p(Arc::empty(), I) == cplx(0));
  CHECK(log_p(Arc(0, 1), 2.0 * I).imag() == doctest::Approx(angle_subtended(Arc(0, 1), 2.0 * I)));
}

TEST_CASE("abutting arcs merge") {
  KreinProduct k(ArcSet::normalize({Arc(1, 2), Arc(2, 3)}));
  for (auto z : halton_box(100, -10, 10, 0, 10)) CHECK(std::abs(k(z) - p_eval(Arc(1, 3), z)) < 1e-12);
}

TEST_CASE("products: normalization and angle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Arc> arcs;
    for (int k = 0; k < 4; ++k) {
      double x = u(rng), y = u(rng);
      if (x != y) arcs.emplace_back(x, y);
    }
    auto O = ArcSet::normalize(arcs);
    KreinProduct k(O);
    CHECK(std::abs(std::abs(k(I)) - 1) < 1e-12);
    for (auto z : halton_box(30, -10, 10, 0, 10)) {
      const double arg = std::arg(k(z));
      const double ang = angle_subtended(O, z);
      // arg wraps to −π when the angle is π
      CHECK(std::abs(std::polar(1.0, arg) - std::polar(1.0, ang)) < 1e-10);
      CHECK(std::abs(k_integral_eval(O, z) - k(z)) < 1e-8 * std::abs(k(z)));
      CHECK(std::abs(k(z) - KreinProduct(regularize(O))(z)) < 1e-10 * std::abs(k(z)));
    }
  }
}

TEST_CASE("full set and Cantor complement give -1") {
  CHECK(KreinProduct(ArcSet::full())(I) == cplx(-1));
  KreinProduct k(CantorComplement{0, 1, std::nullopt, true}, Truncation{1u << 24, 1e-3});
  for (cplx z : {I, cplx(0.5, 0.5), cplx(-2, 0.1)}) {
    const auto v = k.eval(z);
    CHECK(v.tail_bound <= 1e-3);
    CHECK(std::abs(v.value + 1.0) <= v.tail_bound);
  }
  KreinProduct strict(CantorComplement{0, 1, std::nullopt, true}, Truncation{1000, 1e-12});
  CHECK_THROWS_AS((void)strict.eval(I), TailNotCertified);
}

TEST_CASE("finite depth Cantor is exact") {
  ArcGenerator g(CantorComplement{0, 1, 4, false});
  KreinProduct k(g);
  KreinProduct e(ArcSet::normalize(g.enumerate()));
  for (auto z : halton_box(20, -2, 3, 0, 2)) {
    const auto v = k.eval(z);
    CHECK(v.tail_bound == 0.0);
    CHECK(std::abs(v.value - e(z)) < 1e-12);
  }
}

TEST_CASE("integral representation examples") {
  CHECK(std::abs(k_integral_eval(ArcSet(Arc(0, 1)), I) - p_eval(Arc(0, 1), I)) < 1e-8);
  CHECK(k_integral_eval(ArcSet(), I) == cplx(1));
  CHECK(std::arg(k_integral_eval(ArcSet(Arc(-1, 1)), I)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
  CHECK(std::abs(k_integral_eval(ArcSet::full(), cplx(0.3, 2)) + 1.0) < 1e-8);
}

TEST_CASE("real evaluation is exact at zeros and poles") {
  KreinProduct k(ArcSet::normalize({Arc(0, 1), Arc(2, 3), Arc(5, -4)}));
  CHECK(k.eval_real(1.0) == ExtPoint(0.0));
  CHECK(k.eval_real(3.0) == ExtPoint(0.0));
  CHECK(k.eval_real(0.0).is_inf());
  CHECK(k.eval_real(5.0).is_inf());
  CHECK(k.eval_real(-4.0) == ExtPoint(0.0));
  CHECK(k.eval_real(INF).value() < 0);  // ∞ lies inside the wrap arc
  CHECK_THROWS_AS((void)k.eval_real(2.0 + 1e-10), InputError);
  // agrees with the boundary limit from above
  for (double x : {-5.0, 0.5, 1.5, 2.5, 4.0, 7.0}) {
    CHECK(std::abs(k.eval_real(x).value() - k(cplx(x, 1e-12)).real()) < 1e-9);
  }
}

TEST_CASE("structure") {
  auto s = k_structure(ArcSet(Arc(2, 5)));
  CHECK(s.sigma == ClosedSet::from_points(std::vector<ExtPoint>{2.0}));
  REQUIRE(s.zeros.size() == 1);
  CHECK(s.zeros[0] == ExtPoint(5.0));
  CHECK(s.poles.size() == 1);
  CHECK_THROWS_AS(k_structure(ArcSet::normalize({Arc(0, 1), Arc(1, 2)})), InputError);
  auto t = k_structure(ArcSet::normalize({Arc(0, 1), Arc(2, 3)}));
  CHECK(t.zeros == std::vector<ExtPoint>{1.0, 3.0});
  CHECK(t.poles == std::vector<ExtPoint>{0.0, 2.0});
}

TEST_CASE("equivariance") {
  auto O = ArcSet(Arc(0, 1));
  CHECK(equivariance_transport(O, HalfPlaneAuto::identity()).c == doctest::Approx(1.0));
  CHECK(equivariance_transport(O, HalfPlaneAuto::translation(1)).c ==
        doctest::Approx(1 / std::abs(p_eval(Arc(0, 1), cplx(1, 1)))));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c <= 0.1) continue;
    HalfPlaneAuto phi(a, b, c, d);
    auto set = ArcSet::normalize({Arc(u(rng), u(rng) + 3.5), Arc(INF, -5)});
    auto t = equivariance_transport(set, phi);
    KreinProduct k(set), kp(t.set);
    for (auto z : halton_box(5, -3, 3, 0, 3))
      CHECK(std::abs(kp(z) - t.c * k(phi(z))) < 1e-10 * std::abs(kp(z)));
  }
}
