#ifndef CYCLEFRAC_POLYRING_HPP
#define CYCLEFRAC_POLYRING_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <json.hpp>

namespace cyclefrac {

using BigInt = boost::multiprecision::cpp_int;

/// An indeterminate: a family name with zero, one or two non-negative
/// subscripts, e.g. `x1`, `w[3]`, `a[0,2]`.
///
/// Family names are interned, so a VarId is a small trivially copyable value.
/// The derived `operator<=>` is the internal (storage) order; it depends on
/// interning order and is only used for container keys. Use `canonical_less`
/// whenever the order is observable.
class VarId {
 public:
  static constexpr int kMaxSubscript = 0xFFFF;

  explicit VarId(std::string_view family);
  VarId(std::string_view family, int sub);
  VarId(std::string_view family, int sub0, int sub1);

  std::string_view family() const;
  int arity() const { return arity_; }
  int subscript(int k) const;
  std::uint16_t family_id() const { return family_; }

  /// Same family with new subscripts; cheaper than re-interning the name.
  VarId indexed(int sub) const;
  VarId indexed(int sub0, int sub1) const;

  std::string to_string() const;
  /// Parses `name`, `name[i]` or `name[i,j]`.
  static VarId parse(std::string_view text);

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;

  std::size_t hash() const {
    return (std::size_t{family_} << 34) ^ (std::size_t{arity_} << 32) ^
           (std::size_t{subs_[0]} << 16) ^ std::size_t{subs_[1]};
  }

 private:
  std::uint16_t family_ = 0;
  std::uint8_t arity_ = 0;
  std::uint16_t subs_[2] = {0, 0};
};

/// Lexicographic order on (family name, arity, subscripts).
bool canonical_less(const VarId& a, const VarId& b);

/// The cycle-counting indeterminate.
VarId lambda_var();

/// Power product of indeterminates; factors sorted by the internal VarId
/// order, exponents strictly positive. The empty product is the unit.
class Monomial {
 public:
  using Factor = std::pair<VarId, unsigned>;

  Monomial() = default;
  explicit Monomial(VarId v, unsigned exponent = 1);
  /// Accepts factors in any order, with repeats and zero exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned exponent(const VarId& v) const;

  Monomial& operator*=(const Monomial& other);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  /// Factors in canonical variable order.
  std::vector<Factor> canonical_factors() const;
  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Graded order used for printing: total degree ascending, then
/// lexicographic in canonical variable order (higher power of an earlier
/// variable first).
bool graded_less(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is polynomial equality.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, BigInt>;

  Polynomial() = default;
  Polynomial(int c);  // NOLINT: constants convert implicitly
  Polynomial(long long c);  // NOLINT
  Polynomial(const BigInt& c);  // NOLINT
  Polynomial(VarId v);  // NOLINT
  Polynomial(Monomial m, BigInt c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  bool is_constant() const;
  /// Coefficient of the unit monomial.
  BigInt constant_term() const;
  BigInt coefficient(const Monomial& m) const;
  std::vector<VarId> variables() const;
  unsigned degree() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial operator-() const;
  /// Adds c * m in place.
  void add_term(const Monomial& m, const BigInt& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned e) const;

  /// Canonical text, e.g. "3*a[0,1]*b[1,0] - 2*x1^2". Zero prints as "0".
  std::string to_string() const;
  /// Inverse of to_string; also accepts any sum of signed products of
  /// integers, variables and powers (no parentheses).
  static Polynomial parse(std::string_view text);

 private:
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

inline Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
inline Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }
inline Polynomial negate(const Polynomial& p) { return -p; }
inline BigInt coefficient_of(const Polynomial& p, const Monomial& m) { return p.coefficient(m); }

class UnmappedVariable : public std::invalid_argument {
 public:
  explicit UnmappedVariable(const VarId& v)
      : std::invalid_argument("no image for variable " + v.to_string()), var(v) {}
  VarId var;
};

/// Image of a variable under a substitution; nullopt means "not mapped".
using VarMap = std::function<std::optional<Polynomial>(const VarId&)>;

/// Ring homomorphism induced by `map`. Throws UnmappedVariable for any
/// variable of `p` the map does not cover.
Polynomial substitute(const Polynomial& p, const VarMap& map);
Polynomial substitute(const Polynomial& p, const std::map<VarId, Polynomial>& map);

/// A VarMap that applies `inner` and falls back to the identity.
VarMap keep_unmapped(VarMap inner);

// --- modular evaluation ---

/// 2^61 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t reduce_mod(const BigInt& c, std::uint64_t p);

using ResidueMap = std::function<std::optional<std::uint64_t>(const VarId&)>;

/// Value of `p` mod `prime` under `assignment`; throws UnmappedVariable for a
/// variable without a residue.
std::uint64_t eval_mod(const Polynomial& p, const ResidueMap& assignment,
                       std::uint64_t prime = kDefaultPrime);
std::uint64_t eval_mod(const Polynomial& p, const std::map<VarId, std::uint64_t>& assignment,
                       std::uint64_t prime = kDefaultPrime);

/// [n]_{p,q} = sum_{i=0}^{n-1} p^i q^{n-1-i}.
Polynomial qbracket(int n, const Polynomial& p, const Polynomial& q);

// --- JSON ---

/// {"text": ..., "terms": [{"coeff": "<decimal>", "vars": [{"family", "subscripts", "exp"}]}]}
/// Terms appear in printing order; coefficients are decimal strings.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace cyclefrac

template <>
struct std::hash<cyclefrac::VarId> {
  std::size_t operator()(const cyclefrac::VarId& v) const noexcept { return v.hash(); }
};

#endif  // CYCLEFRAC_POLYRING_HPP
