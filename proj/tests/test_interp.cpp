#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hplane/error.hpp"
#include "hplane/interp.hpp"

using namespace hplane;

namespace {
const cplx I(0, 1);
constexpr double kPi = std::numbers::pi;
const ExtPoint INF = ExtPoint::infinity();

bool all_pass(const std::vector<Certification>& certs) {
  for (const auto& c : certs) {
    if (!c.ok) {
      MESSAGE(c.name << " residual " << c.residual << " tol " << c.tol << " " << c.detail);
      return false;
    }
  }
  return true;
}
}  // namespace

TEST_CASE("interlacing on the full circle and on components") {
  CHECK(check_interlacing({{0.0}, {1.0}, {}}).ok);
  CHECK(check_interlacing({{}, {}, {}}).ok);

  const auto bad = check_interlacing({{0.0, 1.0}, {5.0}, {}});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness);
  CHECK(bad.witness->zeros);
  CHECK(bad.witness->first == ExtPoint(0.0));
  CHECK(bad.witness->second == ExtPoint(1.0));

  // two zeros and one pole cannot alternate round the circle
  CHECK_FALSE(check_interlacing({{0.0, 2.0}, {1.0}, {}}).ok);
  CHECK_FALSE(check_interlacing({{0.0}, {}, {}}).ok);
  // with a cut at 3 the same points interlace on the component (3, 3)
  CHECK(check_interlacing({{0.0, 2.0}, {1.0}, {3.0}}).ok);
  // zeros in different components never need a pole between them
  CHECK(check_interlacing({{0.0, 2.0}, {}, {1.0, 5.0}}).ok);
  CHECK_FALSE(check_interlacing({{0.0, 2.0}, {}, {1.0}}).ok);
  CHECK_FALSE(check_interlacing({{0.0, 2.0}, {}, {5.0}}).ok);

  CHECK_THROWS_AS(check_interlacing({{0.0}, {0.0}, {}}), InputError);
}

TEST_CASE("construct_O examples") {
  CHECK(construct_O({{0.0}, {1.0}, {}}) == ArcSet(Arc(1.0, 0.0)));
  CHECK(construct_O({{2.0}, {1.0}, {}}) == ArcSet(Arc(1.0, 2.0)));
  CHECK(construct_O({{1.0}, {}, {0.0}}) == ArcSet(Arc(0.0, 1.0)));
  CHECK(construct_O({{}, {}, {}}).empty());
  CHECK_THROWS_AS(construct_O({{0.0, 1.0}, {5.0}, {}}), InputError);

  // loner pole runs to the right end of its component
  CHECK(construct_O({{}, {1.0}, {0.0, 2.0}}) == ArcSet(Arc(1.0, 2.0)));
  // loners on both sides of a single cut merge through it
  CHECK(construct_O({{1.0}, {-1.0}, {0.0}}) == ArcSet(Arc(-1.0, 1.0)));
  // ∞ as a prescribed zero
  CHECK(construct_O({{INF}, {0.0}, {}}) == ArcSet(Arc(0.0, INF)));
}

TEST_CASE("build_function for A={0}, B={1}") {
  const auto sol = build_function({{0.0}, {1.0}, {}});
  CHECK(all_pass(sol.certs));
  for (auto z : halton_box(50, -5, 5, 0.01, 5)) {
    const cplx expected = -std::sqrt(2.0) * z / (z - 1.0);
    CHECK(std::abs(sol.f(z) - expected) < 1e-12 * (1 + std::abs(expected)));
  }
  CHECK(sol.f.eval_real(0.0) == ExtPoint(0.0));
  CHECK(sol.f.eval_real(1.0).is_inf());
}

TEST_CASE("build_function trivial and loner cases") {
  const auto one = build_function({{}, {}, {}});
  CHECK(all_pass(one.certs));
  CHECK(std::abs(one.f(I) - 1.0) < 1e-15);
  CHECK(std::abs(one.f(cplx(3, 0.1)) - 1.0) < 1e-15);

  const auto loner = build_function({{1.0}, {}, {0.0}});
  CHECK(all_pass(loner.certs));
  REQUIRE(loner.poles_at_singular.size() == 1);
  CHECK(loner.poles_at_singular[0] == ExtPoint(0.0));
  // p_{(0,1)}(z) = (1/√2)(z − 1)/z
  for (auto z : halton_box(20, -3, 3, 0.01, 3)) {
    CHECK(std::abs(loner.f(z) - (z - 1.0) / (std::sqrt(2.0) * z)) < 1e-12 * (1 + std::abs(loner.f(z))));
  }
}

TEST_CASE("build_function on random interlaced problems") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = random_interlaced_problem(rng, 20, 5);
    REQUIRE(check_interlacing(p).ok);
    const auto sol = build_function(p);
    CHECK(all_pass(sol.certs));
    CHECK(satisfies_condition2(p, sol.O));
    // zeros and poles of f outside A ∪ B lie in Y, and are reported
    for (const auto& y : p.singular) {
      const auto lv = sol.f.eval_local(y);
      const bool reported_pole = std::ranges::find(sol.poles_at_singular, y) != sol.poles_at_singular.end();
      CHECK(lv.is_pole() == reported_pole);
    }
  }
}

TEST_CASE("(2) and (3) agree against exhaustive search") {
  std::mt19937 rng(7);
  int agree = 0, interlaced = 0;
  const int trials = 300;
  for (int trial = 0; trial < trials; ++trial) {
    const auto p = trial % 2 ? random_problem(rng, 8, 3) : random_interlaced_problem(rng, 4, 2);
    if (p.zeros.size() + p.poles.size() + p.singular.size() > 10) continue;
    const bool three = check_interlacing(p).ok;
    const bool two = search_condition2(p).has_value();
    const bool sweep = satisfies_condition2(p, sweep_arcs(p));
    interlaced += three;
    if (three == two && sweep == two) {
      ++agree;
    } else {
      MESSAGE("mismatch: |A|=" << p.zeros.size() << " |B|=" << p.poles.size() << " |Y|=" << p.singular.size());
    }
  }
  CHECK(agree == trials);
  CHECK(interlaced > 50);
  CHECK(interlaced < trials);
}

TEST_CASE("whole empty component can be added to O") {
  const InterpProblem p{{1.0}, {0.5}, {0.0, 2.0, 5.0}};
  const ArcSet O = construct_O(p);
  CHECK(satisfies_condition2(p, O));
  // (2, 5) holds no prescribed point
  const ArcSet bigger = unite(O, ArcSet(Arc(2.0, 5.0)));
  CHECK(bigger != O);
  CHECK(satisfies_condition2(p, bigger));
  const PickFunction f = PickFunction::composite(1.0, KreinProduct(bigger));
  CHECK(f.eval_local(1.0).is_zero());
  CHECK(f.eval_local(0.5).is_pole());
  CHECK(f.eval_local(2.0).is_pole());
  CHECK(f.eval_local(5.0).is_zero());
  CHECK(min_imag_on_grid(f) >= -1e-12);
}

TEST_CASE("realizable pairs") {
  const ArcSet punctured(Arc::punctured(0.0));
  const auto r = realizable_pair(punctured, ArcSet(Arc(0.0, INF)));
  CHECK(r.ok());
  REQUIRE(r.f);
  for (auto z : halton_box(20, -3, 3, 0.01, 3)) CHECK(std::abs((*r.f)(z) + 1.0 / z) < 1e-12 * (1 + std::abs(1.0 / z)));

  const auto not_sub = realizable_pair(ArcSet(Arc(0.0, 1.0)), ArcSet(Arc(0.5, 2.0)));
  CHECK_FALSE(not_sub.subset);
  CHECK_FALSE(not_sub.ok());

  const auto not_reg = realizable_pair(ArcSet(Arc(0.0, 3.0)), ArcSet::normalize({Arc(0.0, 1.0), Arc(1.0, 2.0)}));
  CHECK(not_reg.subset);
  CHECK_FALSE(not_reg.regular);

  // Ω has a hole at 1 that is not a left endpoint of O
  const ArcSet holed = ArcSet(Arc(0.0, 3.0)).without_points(std::vector<ExtPoint>{1.0});
  const auto not_c = realizable_pair(holed, ArcSet(Arc(1.5, 2.0)));
  CHECK_FALSE(not_c.omega);

  // Ω₁ = (0, 3) with an exponential factor over the complement
  const ArcSet omega = ArcSet(Arc(0.0, 3.0)).without_points(std::vector<ExtPoint>{1.0});
  const auto ok = realizable_pair(omega, ArcSet(Arc(1.0, 2.0)));
  CHECK(ok.ok());
  for (const auto& c : ok.certs) CHECK_MESSAGE(c.ok, c.name << ": " << c.detail);
  REQUIRE(ok.f);
  // f > 0 on (0, 1) and (2, 3), f < 0 on (1, 2)
  CHECK(ok.f->eval_real(0.5).value() > 0);
  CHECK(ok.f->eval_real(1.5).value() < 0);
  CHECK(ok.f->eval_real(2.5).value() > 0);
}

TEST_CASE("disk interpolation") {
  DiskProblem dp;
  dp.zeros = {1.0};
  dp.poles = {-1.0};
  dp.alpha = -1.0;
  dp.beta = 1.0;
  const auto sol = disk_interpolate(dp);
  CHECK(all_pass(sol.certs));
  CHECK(std::abs(sol.theta(1.0) + 1.0) < 1e-8);
  CHECK(std::abs(sol.theta(-1.0) - 1.0) < 1e-8);
  CHECK(std::abs(sol.theta(std::polar(0.5, kPi / 3))) < 1);
  CHECK_THROWS_AS(sol.theta(2.0), InputError);

  DiskProblem empty;
  const auto c = disk_interpolate(empty);
  CHECK(all_pass(c.certs));
  CHECK(std::abs(std::abs(c.theta(0.3)) - 1) < 1e-12);

  // several points with a cut on the circle
  DiskProblem many;
  many.zeros = {std::polar(1.0, 0.3), std::polar(1.0, 2.0)};
  many.poles = {std::polar(1.0, 1.0), std::polar(1.0, 4.0)};
  many.singular = {std::polar(1.0, 5.5)};
  many.alpha = std::polar(1.0, 0.7);
  many.beta = std::polar(1.0, -1.2);
  many.zeta = cplx(0.4, 2.0);
  const auto s = disk_interpolate(many);
  CHECK(all_pass(s.certs));

  DiskProblem bad;
  bad.zeros = {1.0, -1.0};
  bad.poles = {I};
  CHECK_THROWS_AS(disk_interpolate(bad), InputError);
}
