#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hplane/error.hpp"
#include "hplane/factor.hpp"

using namespace hplane;

namespace {
const cplx I(0, 1);
constexpr double kPi = std::numbers::pi;
const ExtPoint INF = ExtPoint::infinity();

PickFunction atomic(double alpha, double beta, std::vector<Atom> atoms) {
  return PickFunction::rep(NevanlinnaRep(alpha, beta, Measure(std::move(atoms))));
}

bool is_constant(const PickFunction& g, cplx value, double tol) {
  for (auto z : halton_box(20, -5, 5, 0, 5)) {
    if (std::abs(g(z) - value) > tol) return false;
  }
  return true;
}

PickFunction random_atomic(std::mt19937& rng, int n, double alpha) {
  std::uniform_real_distribution<double> t(-5, 5), w(0.1, 2), b(-3, 3);
  std::vector<Atom> atoms;
  for (int k = 0; k < n; ++k) atoms.push_back({t(rng), w(rng)});
  return atomic(alpha, b(rng), atoms);
}

// The closed form for J = (−∞, 0) when σ(f) ⊂ [ε, ∞]:
// g = α + [β + Σ w/t]/z + Σ w(1 + t²)/(t(t − z)).
cplx halfline_quotient(double alpha, double beta, const std::vector<Atom>& atoms, cplx z) {
  cplx s = beta;
  for (const auto& a : atoms) s += a.w / a.t;
  cplx g = alpha + s / z;
  for (const auto& a : atoms) g += a.w * (1 + a.t * a.t) / (a.t * (a.t - z));
  return g;
}
}  // namespace

TEST_CASE("divide_single examples") {
  auto g = divide_single(atomic(1, 0, {}), Arc(INF, 0));
  CHECK(is_constant(g, 1.0, 1e-14));
  auto h = divide_single(atomic(0, 0, {{0.0, 1.0}}), Arc(0, INF));
  CHECK(is_constant(h, 1.0, 1e-14));
  CHECK_THROWS_AS(divide_single(atomic(1, 0, {}), Arc(0, INF)), InputError);
}

TEST_CASE("divide_single against the half-line closed form") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> t(0.1, 6), w(0.1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Atom> atoms;
    for (int k = 0; k < 4; ++k) atoms.push_back({t(rng), w(rng)});
    double s = 0;
    for (const auto& a : atoms) s += a.w / a.t;
    const double alpha = trial % 2 ? 0.7 : 0.0;
    const double beta = -s - 0.5 - trial * 0.1;  // f(0) < 0
    auto f = atomic(alpha, beta, atoms);
    // (−∞, 0) lies in Γ(f) when f(0) ≤ 0; the zero of f is past 0.
    auto g = divide_single(f, Arc(INF, 0));
    for (auto z : halton_box(50, -8, 8, 0, 8)) {
      const cplx ref = halfline_quotient(alpha, beta, atoms, z);
      CHECK(std::abs(g(z) - ref) < 1e-10 * (1 + std::abs(ref)));
      CHECK(std::abs(p_eval(Arc(INF, 0), z) * g(z) - f(z)) < 1e-10 * (1 + std::abs(f(z))));
    }
  }
}

TEST_CASE("divide_single: z - 1/z on the component in (0, 1)") {
  auto f = atomic(1, 0, {{0.0, 1.0}});
  auto r = analyze(f);
  Arc J = Arc::empty();
  for (const auto& arc : r.gamma.arcs()) {
    if (arc.left() == ExtPoint(0.0)) J = arc;
  }
  REQUIRE(J.is_proper());
  CHECK(J.right().value() == doctest::Approx(1.0));
  auto g = divide_single(f, J);
  CHECK(min_imag_on_grid(g) >= -1e-12);
  for (auto z : halton_box(100, -5, 5, 0, 5)) CHECK(std::abs(p_eval(J, z) * g(z) - f(z)) < 1e-10 * (1 + std::abs(f(z))));
}

TEST_CASE("factorize: atomic reps and the corollary") {
  auto z = factorize(atomic(1, 0, {}));
  CHECK(z.gamma == ArcSet(Arc(INF, 0)));
  CHECK(is_constant(z.g, 1.0, 1e-14));
  auto m = factorize(atomic(0, 0, {{0.0, 1.0}}));
  CHECK(m.gamma == ArcSet(Arc(0, INF)));
  CHECK(is_constant(m.g, 1.0, 1e-14));

  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_atomic(rng, 8, trial % 2 ? 0.0 : 1.3);
    auto fz = factorize(f);
    CHECK(fz.ok());
    // g is the constant |f(i)|
    CHECK(is_constant(fz.g, std::abs(f(I)), 1e-9 * std::abs(f(I))));
    auto c = constant_factor_check(f);
    CHECK(c.ok);
    CHECK(c.residual < 1e-9);
  }
  CHECK(constant_factor_check(atomic(2, 0, {})).c == doctest::Approx(2.0));
  CHECK(constant_factor_check(atomic(0, 0, {{0.0, 1.0}})).c == doctest::Approx(1.0));
}

TEST_CASE("factorize is independent of division order") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_atomic(rng, 5, 0.5);
    auto arcs = analyze(f).gamma.arcs();
    auto forward = f;
    for (const auto& a : arcs) forward = divide_single(forward, a);
    auto backward = f;
    for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) backward = divide_single(backward, *it);
    for (auto z : halton_box(20, -5, 5, 0, 5)) CHECK(std::abs(forward(z) - backward(z)) < 1e-9 * std::abs(forward(z)));
  }
}

TEST_CASE("factorize: density pieces") {
  auto f = PickFunction::rep(NevanlinnaRep(0.5, -1.0, Measure({{-3.0, 0.7}, {2.5, 0.2}}, {{-1.0, 0.5, 0.3}, {1.0, 2.0, 1.2}})));
  auto fz = factorize(f);
  CHECK(fz.ok());
  CHECK(fz.g.kind() == "quotient");
  // removed poles at atoms leave σ(g) = density pieces
  CHECK(fz.g.sigma().measure() == doctest::Approx(2.5));
}

TEST_CASE("factorize: z + sqrt(z^2 - 1) as a black box") {
  auto f = builtin_black_box("z_plus_sqrt_z2_minus_1");
  auto fz = factorize(f);
  CHECK(fz.ok());
  REQUIRE(fz.gamma.size() == 1);
  const Arc J = fz.gamma.arcs()[0];
  CHECK(J.left().is_inf());
  CHECK(std::abs(J.right().value() + 1.0) < 1e-9);
  CHECK(fz.g.eval_real(10.0).value() == doctest::Approx(std::sqrt(2.0) * (10 + std::sqrt(99.0)) / 11).epsilon(1e-9));
  for (double x = -20; x <= 20; x += 0.2) {
    if (std::abs(x) <= 1.0) continue;
    CHECK(fz.g.eval_real(x).value() > 0);
  }
}

TEST_CASE("composites") {
  auto k = PickFunction::composite(2.0, KreinProduct(ArcSet::normalize({Arc(0, 1), Arc(3, -2)})));
  auto fz = factorize(k);
  CHECK(fz.ok());
  CHECK(is_constant(fz.g, 2.0, 1e-12));
  auto g = divide_single(k, Arc(0, 1));
  CHECK(g.kind() == "composite");
  for (auto z : halton_box(20, -5, 5, 0, 5)) CHECK(std::abs(p_eval(Arc(0, 1), z) * g(z) - k(z)) < 1e-12 * std::abs(k(z)));
}

TEST_CASE("exp representation") {
  ExpRep zero;
  CHECK(exp_eval(zero, I).exp_h == cplx(1));
  ExpRep half(0, {{-1, 1, 0.5}});
  CHECK(exp_eval(half, I).h.imag() == doctest::Approx(kPi / 4));
  ExpRep all(0, {{-INFINITY, INFINITY, 1.0}});
  CHECK(exp_eval(all, cplx(0.3, 0.2)).h.imag() == doctest::Approx(kPi));
  for (double x : {-3.0, 2.0, 7.5}) {
    CHECK(half.exp_real(x) > 0);
    CHECK(std::abs(exp_eval(half, x).exp_h - half.exp_real(x)) < 1e-12);
  }
  ExpRep mixed(0.3, {{-2, -1, 0.2}, {0, 1, 0.9}, {4, INFINITY, 0.5}});
  for (auto z : halton_box(500, -10, 10, 0, 10)) {
    const double im = mixed.h(z).imag();
    CHECK(im > 0);
    CHECK(im < kPi);
  }
}

TEST_CASE("compose_in_class") {
  auto r = compose_in_class(ArcSet(Arc(0, 1)), ExpRep(0, {{2, 3, 0.5}}));
  CHECK(r.ok);
  CHECK(r.min_imag >= -1e-12);
  auto e = compose_in_class(ArcSet(), ExpRep());
  CHECK(std::abs(e.f(I) - 1.0) < 1e-15);
  CHECK_THROWS_AS(compose_in_class(ArcSet(Arc(0, 1)), ExpRep(0, {{0.5, 0.7, 0.5}})), InputError);
  CHECK_THROWS_AS(compose_in_class(ArcSet(Arc(0, 1)), ExpRep(0, {{2, 3, 1.0}})), InputError);
  // factorization of a composite with an exponential factor keeps e^h as g
  auto fz = factorize(r.f);
  CHECK(fz.ok());
  CHECK(fz.gamma == ArcSet(Arc(0, 1)));
}

TEST_CASE("psi recovery") {
  ExpRep half(0, {{-1, 1, 0.5}});
  auto g = [&](cplx z) { return exp_eval(half, z).exp_h; };
  CHECK(std::abs(psi_recover(g, 0.0) - 0.5) < 1e-4);
  CHECK(psi_recover([](cplx) { return cplx(1); }, 0.3) == 0.0);
  ExpRep quarter(0, {{0, 1, 0.25}});
  CHECK(psi_recover([&](cplx z) { return exp_eval(quarter, z).exp_h; }, 2.0) < 1e-4);
}
