#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclefrac/polyring.hpp"
#include "oracles.hpp"

using namespace cyclefrac;

namespace {

Polynomial P(const char* text) { return Polynomial::parse(text); }
Polynomial v(const char* name) { return Polynomial(VarId(name)); }

}  // namespace

TEST_CASE("variables") {
  const VarId a("a", 0, 1);
  CHECK(a.family() == "a");
  CHECK(a.arity() == 2);
  CHECK(a.subscript(1) == 1);
  CHECK(a.to_string() == "a[0,1]");
  CHECK(VarId::parse("a[0,1]") == a);
  CHECK(VarId::parse("w[3]") == VarId("w", 3));
  CHECK(VarId::parse("x1") == VarId("x1"));
  CHECK(VarId("e").indexed(4) == VarId("e", 4));
  CHECK(VarId("b").indexed(2, 5) == VarId("b", 2, 5));
  CHECK_THROWS_AS(VarId::parse("1x"), std::invalid_argument);
  CHECK_THROWS_AS(VarId::parse("a[0,"), std::invalid_argument);
  CHECK_THROWS_AS(VarId("a", -1), std::out_of_range);
  CHECK(canonical_less(VarId("a", 0, 1), VarId("a", 1, 0)));
  CHECK(canonical_less(VarId("a", 5, 5), VarId("b", 0, 0)));
  CHECK(canonical_less(VarId("w"), VarId("w", 0)));
}

TEST_CASE("ring operations") {
  CHECK((v("x") + (-v("x"))).is_zero());
  CHECK((v("x") + v("y")) * (v("x") - v("y")) == P("x^2 - y^2"));
  const auto prod = (P("a[0,1]") - P("a[1,0]")) * (P("b[0,1]") - P("b[1,0]"));
  CHECK(prod.term_count() == 4);
  CHECK(prod == P("a[0,1]*b[0,1] - a[0,1]*b[1,0] - a[1,0]*b[0,1] + a[1,0]*b[1,0]"));
  CHECK(add(v("x"), v("x")) == P("2*x"));
  CHECK(mul(P("2*x"), P("3*y")) == P("6*x*y"));
  CHECK(negate(P("x - 1")) == P("1 - x"));
  CHECK(P("x").pow(0) == Polynomial(1));
  CHECK(P("x + 1").pow(3) == P("x^3 + 3*x^2 + 3*x + 1"));
}

TEST_CASE("canonical text") {
  CHECK(Polynomial().to_string() == "0");
  CHECK(Polynomial(-7).to_string() == "-7");
  CHECK(P("3*a[0,1]*b[1,0] - 2*x1^2").to_string() == "3*a[0,1]*b[1,0] - 2*x1^2");
  CHECK(P("y + x + 1").to_string() == "1 + x + y");
  CHECK(P("x*y + x^2 + y^2").to_string() == "x^2 + x*y + y^2");
  CHECK(P("-x").to_string() == "-x");
  CHECK(P("2*x*x").to_string() == "2*x^2");
  const auto big = Polynomial(BigInt("123456789012345678901234567890")) * v("t");
  CHECK(big.to_string() == "123456789012345678901234567890*t");
  CHECK(P(big.to_string().c_str()) == big);
  CHECK_THROWS_AS(P("x +"), std::invalid_argument);
  CHECK_THROWS_AS(P("x ^ y"), std::invalid_argument);
}

TEST_CASE("coefficients and variables") {
  const auto p = P("x^2 - y^2");
  CHECK(coefficient_of(Polynomial(), Monomial(VarId("x"))) == 0);
  CHECK(coefficient_of(p, Monomial(VarId("x"), 2)) == 1);
  CHECK(coefficient_of(p, Monomial(VarId("y"), 2)) == -1);
  CHECK(p.degree() == 2);
  CHECK(p.variables().size() == 2);
  CHECK(P("5").is_constant());
  CHECK(P("5 + x").constant_term() == 5);
}

TEST_CASE("substitution") {
  std::map<VarId, Polynomial> spec = {{VarId("a", 0, 0), v("y1")}};
  CHECK(substitute(P("a[0,0]"), spec) == v("y1"));
  const auto e3 = [](const VarId& x) -> std::optional<Polynomial> {
    if (x.family() == "e") return P("s").pow(static_cast<unsigned>(x.subscript(0))) * Polynomial(VarId("w", x.subscript(0)));
    return std::nullopt;
  };
  CHECK(substitute(P("e[3]"), e3) == P("s^3*w[3]"));
  const auto p = P("x^2*y - 3*z + 4");
  CHECK(substitute(p, keep_unmapped([](const VarId&) -> std::optional<Polynomial> { return std::nullopt; })) == p);
  CHECK_THROWS_AS(substitute(p, spec), UnmappedVariable);
  try {
    substitute(P("q"), spec);
  } catch (const UnmappedVariable& e) {
    CHECK(e.var == VarId("q"));
  }
}

TEST_CASE("modular evaluation") {
  std::map<VarId, std::uint64_t> a = {{VarId("x"), 3}, {VarId("y"), 2}};
  CHECK(eval_mod(Polynomial(), a, 101) == 0);
  CHECK(eval_mod(P("x^2 - y^2"), a, 101) == 5);
  CHECK(eval_mod(P("y - x"), a, 101) == 100);
  CHECK_THROWS_AS(eval_mod(P("z"), a, 101), UnmappedVariable);
  CHECK(reduce_mod(BigInt(-1), kDefaultPrime) == kDefaultPrime - 1);
  CHECK(pow_mod(2, 61, kDefaultPrime) == 1);
}

TEST_CASE("q-brackets") {
  CHECK(qbracket(0, v("p"), v("q")).is_zero());
  CHECK(qbracket(1, v("p"), v("q")) == Polynomial(1));
  for (int n = 0; n <= 20; ++n) CHECK(qbracket(n, Polynomial(1), Polynomial(1)) == Polynomial(n));
  for (int n = 1; n <= 12; ++n) CHECK(qbracket(n - 1, Polynomial(-1), Polynomial(1)) == Polynomial(n % 2 == 0 ? 1 : 0));
  CHECK(qbracket(2, -v("p"), v("q")) == P("q - p"));
  CHECK(qbracket(3, v("p"), v("q")) == P("p^2 + p*q + q^2"));
}

TEST_CASE("JSON") {
  const auto p = P("3*a[0,1]*b[1,0] - 2*x1^2 + 7");
  const auto j = to_json(p);
  CHECK(j["text"] == p.to_string());
  CHECK(j["terms"][0]["coeff"] == "7");
  CHECK(polynomial_from_json(j) == p);
  const auto big = Polynomial(BigInt("-98765432109876543210987654321"));
  CHECK(to_json(big)["terms"][0]["coeff"] == "-98765432109876543210987654321");
  CHECK(polynomial_from_json(to_json(big)) == big);
}

TEST_CASE("property: ring axioms on 1000 random triples") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = oracle::random_poly(rng);
    const auto q = oracle::random_poly(rng);
    const auto r = oracle::random_poly(rng);
    REQUIRE(p + q == q + p);
    REQUIRE(p * q == q * p);
    REQUIRE((p + q) + r == p + (q + r));
    REQUIRE((p * q) * r == p * (q * r));
    REQUIRE(p * (q + r) == p * q + p * r);
    REQUIRE(p * Polynomial(1) == p);
    REQUIRE(p + Polynomial() == p);
    REQUIRE((p + negate(p)).terms().empty());
    REQUIRE(Polynomial::parse(p.to_string()) == p);
  }
}

TEST_CASE("property: evaluation is a homomorphism, also after substitution") {
  std::mt19937_64 rng(77);
  const std::uint64_t prime = kDefaultPrime;
  for (int trial = 0; trial < 1000; ++trial) {
    std::map<VarId, std::uint64_t> a;
    for (const char* name : {"x", "y", "z"}) a[VarId(name)] = rng() % prime;
    for (int i = 0; i <= 1; ++i)
      for (int j = 0; j <= 1; ++j) a[VarId("a", i, j)] = rng() % prime;
    const auto p = oracle::random_poly(rng);
    const auto q = oracle::random_poly(rng);
    REQUIRE(eval_mod(p * q, a) == mul_mod(eval_mod(p, a), eval_mod(q, a), prime));
    REQUIRE(eval_mod(p + q, a) == (eval_mod(p, a) + eval_mod(q, a)) % prime);

    // x -> random poly, y -> random poly; evaluating the image equals
    // evaluating p at the composed assignment.
    const auto fx = oracle::random_poly(rng);
    const auto fy = oracle::random_poly(rng);
    std::map<VarId, Polynomial> sub = {{VarId("x"), fx}, {VarId("y"), fy}};
    const VarMap map = keep_unmapped([&sub](const VarId& x) -> std::optional<Polynomial> {
      auto it = sub.find(x);
      if (it == sub.end()) return std::nullopt;
      return it->second;
    });
    const auto image = substitute(p, map);
    auto composed = a;
    composed[VarId("x")] = eval_mod(fx, a);
    composed[VarId("y")] = eval_mod(fy, a);
    REQUIRE(eval_mod(image, a) == eval_mod(p, composed));
    REQUIRE(substitute(p * q, map) == image * substitute(q, map));
    REQUIRE(substitute(p + q, map) == image + substitute(q, map));
  }
}
