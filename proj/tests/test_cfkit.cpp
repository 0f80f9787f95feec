#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclefrac/cfkit.hpp"
#include "oracles.hpp"

using namespace cyclefrac;
using Series = TruncatedSeries<Polynomial>;
using Spec = FractionSpec<Polynomial>;

namespace {

Polynomial P(const char* text) { return Polynomial::parse(text); }

Series series(std::initializer_list<int> cs) {
  std::vector<Polynomial> v;
  for (int c : cs) v.emplace_back(c);
  return Series(v);
}

// Integer generator table, values in [-3, 3], with a fraction of zeros.
std::function<Polynomial(int)> random_generator(std::mt19937_64& rng, int levels) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<int> values;
  for (int k = 0; k <= levels; ++k) values.push_back(d(rng));
  return [values](int k) { return Polynomial(values.at(static_cast<std::size_t>(k))); };
}

std::vector<Polynomial> coeffs(const Series& s) { return s.coeffs(); }

}  // namespace

TEST_CASE("series arithmetic") {
  CHECK(series_reciprocal(series({1, -1, 0, 0})) == series({1, 1, 1, 1}));
  CHECK(series_mul(series({1, 1, 0}), series({1, -1, 0})) == series({1, 0, -1}));
  CHECK(series_add(series({1, 2}), series({3, 4})) == series({4, 6}));
  CHECK_THROWS_AS(series_reciprocal(series({2, 1})), std::domain_error);
  CHECK_THROWS_AS(series_reciprocal(series({0, 1})), std::domain_error);
  CHECK_THROWS_AS(series({1, 2}) + series({1, 2, 3}), std::invalid_argument);
  CHECK(series({1, 2, 3}).truncated(1) == series({1, 2}));
  CHECK_THROWS_AS(series({1, 2}).truncated(3), std::invalid_argument);
  Series s(2, P("x"));
  CHECK(to_string(s) == "x; 0; 0");
  CHECK(to_string(TruncatedSeries<Mod61>({Mod61(1), Mod61(-1)})) == "1; 2305843009213693950");
}

TEST_CASE("Mod61 arithmetic") {
  const Mod61 m1(-1);
  CHECK(m1.value() == Mod61::kPrime - 1);
  CHECK(m1 * m1 == Mod61(1));
  CHECK(Mod61(2).pow(61) == Mod61(1));
  CHECK(Mod61::from_residue(Mod61::kPrime) == Mod61(0));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto a = rng() % Mod61::kPrime;
    const auto b = rng() % Mod61::kPrime;
    REQUIRE((Mod61::from_residue(a) * Mod61::from_residue(b)).value() == mul_mod(a, b, Mod61::kPrime));
    REQUIRE((Mod61::from_residue(a) - Mod61::from_residue(b) + Mod61::from_residue(b)).value() == a);
  }
}

TEST_CASE("property: reciprocal is an involution on unit series") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Polynomial> cs{Polynomial(1)};
    for (int k = 1; k <= 6; ++k) cs.emplace_back(d(rng));
    const Series s(cs);
    const auto r = series_reciprocal(s);
    REQUIRE(series_reciprocal(r) == s);
    REQUIRE(s * r == Series::one(6));
  }
}

TEST_CASE("small expansions") {
  const Spec zero_j = Spec::J([](int) { return Polynomial(0); }, [](int) { return Polynomial(0); });
  CHECK(expand(zero_j, 5) == Series::one(5));
  // Catalan numbers from the all-ones S-fraction.
  const Spec catalan = Spec::S([](int) { return Polynomial(1); });
  CHECK(expand(catalan, 6) == series({1, 1, 2, 5, 14, 42, 132}));
  // n! from alpha_n = ceil(n/2).
  const Spec factorial = Spec::S([](int n) { return Polynomial((n + 1) / 2); });
  CHECK(expand(factorial, 6) == series({1, 1, 2, 6, 24, 120, 720}));
  const Spec symbolic = Spec::J([](int n) { return n == 0 ? P("g") : Polynomial(0); },
                                [](int n) { return n == 1 ? P("b") : Polynomial(0); });
  CHECK(expand(symbolic, 3) == Series({Polynomial(1), P("g"), P("g^2 + b"), P("g^3 + 2*b*g")}));
  CHECK_THROWS_AS(expand(Spec{FractionKind::T, [](int) { return Polynomial(1); }, nullptr, nullptr, nullptr}, 2),
                  std::invalid_argument);
}

TEST_CASE("expansion against weighted lattice paths, symbolic generators") {
  const auto a = [](int k) { return Polynomial(VarId("a", k)); };
  const auto d = [](int k) { return Polynomial(VarId("d", k)); };
  const auto g = [](int k) { return Polynomial(VarId("g", k)); };
  const auto b = [](int k) { return Polynomial(VarId("b", k)); };
  CHECK(coeffs(expand(Spec::S(a), 5)) == oracle::dyck(a, 5));
  CHECK(coeffs(expand(Spec::T(a, d), 4)) == oracle::schroeder(a, d, 4));
  CHECK(coeffs(expand(Spec::J(g, b), 6)) == oracle::motzkin(g, b, 6));
}

TEST_CASE("property: depth stability and truncation consistency") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> kind(0, 2), order(0, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int N = order(rng);
    const auto g1 = random_generator(rng, 2 * N + 8);
    const auto g2 = random_generator(rng, 2 * N + 8);
    Spec spec;
    switch (kind(rng)) {
      case 0: spec = Spec::S(g1); break;
      case 1: spec = Spec::T(g1, g2); break;
      default: spec = Spec::J(g1, g2); break;
    }
    const auto full = expand(spec, N);
    REQUIRE(expand(spec, N, N + 5) == full);
    if (N > 0) {
      const int M = static_cast<int>(rng() % static_cast<unsigned>(N));
      REQUIRE(full.truncated(M) == expand(spec, M));
    }
  }
}

TEST_CASE("even contraction") {
  const Spec t0 = Spec::T([](int) { return Polynomial(0); }, [](int n) { return n == 1 ? P("d") : Polynomial(0); });
  const auto j0 = contract_even(t0);
  CHECK(j0.gamma(0) == P("d"));
  for (int n = 1; n <= 5; ++n) {
    CHECK(j0.gamma(n).is_zero());
    CHECK(j0.beta(n).is_zero());
  }

  const Spec bad = Spec::T([](int) { return Polynomial(1); }, [](int) { return Polynomial(1); });
  CHECK_THROWS_AS(contract_even(bad).gamma(1), std::invalid_argument);
  CHECK_THROWS_AS(contract_even(Spec::S([](int) { return Polynomial(1); })), std::invalid_argument);

  const auto a = [](int k) { return Polynomial(VarId("a", k)); };
  const Spec t = Spec::T(a, [](int n) { return n == 1 ? P("d") : Polynomial(0); });
  CHECK(expand(contract_even(t), 6) == expand(t, 6));
}

TEST_CASE("property: contraction preserves the series for random data") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto alpha = random_generator(rng, 20);
    const int d1 = static_cast<int>(rng() % 7) - 3;
    const Spec t = Spec::T(alpha, [d1](int n) { return n == 1 ? Polynomial(d1) : Polynomial(0); });
    REQUIRE(expand(contract_even(t), 8) == expand(t, 8));
  }
}

TEST_CASE("modular coefficients") {
  const FractionSpec<Mod61> s = FractionSpec<Mod61>::S([](int) { return Mod61(1); });
  const auto e = expand(s, 5);
  CHECK(e[5] == Mod61(42));
  const auto mapped = map_series(expand(Spec::S([](int) { return Polynomial(1); }), 5),
                                 [](const Polynomial& p) { return Mod61::from_residue(reduce_mod(p.constant_term(), Mod61::kPrime)); });
  CHECK(mapped == e);
}
