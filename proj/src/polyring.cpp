#include "cyclefrac/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cyclefrac {

namespace {

class FamilyTable {
 public:
  std::uint16_t intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    if (names_.size() >= 0xFFFF) throw std::length_error("too many variable families");
    auto id = static_cast<std::uint16_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::string_view name(std::uint16_t id) const {
    std::lock_guard lock(mutex_);
    return names_.at(id);
  }

 private:
  mutable std::mutex mutex_;
  std::deque<std::string> names_;  // deque: references stay valid on growth
  std::unordered_map<std::string, std::uint16_t> ids_;
};

FamilyTable& families() {
  static FamilyTable table;
  return table;
}

bool valid_family_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::uint16_t checked_subscript(int s) {
  if (s < 0 || s > VarId::kMaxSubscript) {
    throw std::out_of_range("variable subscript out of range: " + std::to_string(s));
  }
  return static_cast<std::uint16_t>(s);
}

std::uint16_t checked_family(std::string_view family) {
  if (!valid_family_name(family)) {
    throw std::invalid_argument("invalid variable family name '" + std::string(family) + "'");
  }
  return families().intern(family);
}

}  // namespace

// ---------------------------------------------------------------- VarId

VarId::VarId(std::string_view family) : family_(checked_family(family)) {}

VarId::VarId(std::string_view family, int sub)
    : family_(checked_family(family)), arity_(1), subs_{checked_subscript(sub), 0} {}

VarId::VarId(std::string_view family, int sub0, int sub1)
    : family_(checked_family(family)),
      arity_(2),
      subs_{checked_subscript(sub0), checked_subscript(sub1)} {}

VarId VarId::indexed(int sub) const {
  VarId v = *this;
  v.arity_ = 1;
  v.subs_[0] = checked_subscript(sub);
  v.subs_[1] = 0;
  return v;
}

VarId VarId::indexed(int sub0, int sub1) const {
  VarId v = *this;
  v.arity_ = 2;
  v.subs_[0] = checked_subscript(sub0);
  v.subs_[1] = checked_subscript(sub1);
  return v;
}

std::string_view VarId::family() const { return families().name(family_); }

int VarId::subscript(int k) const {
  if (k < 0 || k >= arity_) throw std::out_of_range("subscript index out of range");
  return subs_[k];
}

std::string VarId::to_string() const {
  std::string out(family());
  if (arity_ == 1) {
    out += "[" + std::to_string(subs_[0]) + "]";
  } else if (arity_ == 2) {
    out += "[" + std::to_string(subs_[0]) + "," + std::to_string(subs_[1]) + "]";
  }
  return out;
}

VarId VarId::parse(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed variable '" + std::string(text) + "'"); };
  auto open = text.find('[');
  if (open == std::string_view::npos) return VarId(text);
  if (text.back() != ']') throw fail();
  auto family = text.substr(0, open);
  auto inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<int> subs;
  std::size_t pos = 0;
  while (true) {
    auto comma = inner.find(',', pos);
    auto piece = inner.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (piece.empty() || !std::all_of(piece.begin(), piece.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw fail();
    }
    if (piece.size() > 6) throw fail();
    subs.push_back(std::stoi(std::string(piece)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (subs.size() == 1) return VarId(family, subs[0]);
  if (subs.size() == 2) return VarId(family, subs[0], subs[1]);
  throw fail();
}

bool canonical_less(const VarId& a, const VarId& b) {
  if (a.family_id() != b.family_id()) return a.family() < b.family();
  if (a.arity() != b.arity()) return a.arity() < b.arity();
  for (int k = 0; k < a.arity(); ++k) {
    if (a.subscript(k) != b.subscript(k)) return a.subscript(k) < b.subscript(k);
  }
  return false;
}

VarId lambda_var() {
  static const VarId v("lambda");
  return v;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(VarId v, unsigned exponent) {
  if (exponent > 0) factors_.emplace_back(v, exponent);
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
  }
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::exponent(const VarId& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, const VarId& x) { return f.first < x; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial& Monomial::operator*=(const Monomial& other) {
  std::vector<Factor> merged;
  merged.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      merged.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  factors_ = std::move(merged);
  return *this;
}

std::vector<Monomial::Factor> Monomial::canonical_factors() const {
  auto out = factors_;
  std::sort(out.begin(), out.end(),
            [](const Factor& a, const Factor& b) { return canonical_less(a.first, b.first); });
  return out;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : canonical_factors()) {
    if (!out.empty()) out += '*';
    out += v.to_string();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool graded_less(const Monomial& a, const Monomial& b) {
  auto da = a.degree();
  auto db = b.degree();
  if (da != db) return da < db;
  auto fa = a.canonical_factors();
  auto fb = b.canonical_factors();
  for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return canonical_less(fa[i].first, fb[i].first);
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
  }
  return fa.size() < fb.size();
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(int c) : Polynomial(BigInt(c)) {}
Polynomial::Polynomial(long long c) : Polynomial(BigInt(c)) {}

Polynomial::Polynomial(const BigInt& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial::Polynomial(VarId v) { terms_.emplace(Monomial(v), BigInt(1)); }

Polynomial::Polynomial(Monomial m, BigInt c) {
  if (c != 0) terms_.emplace(std::move(m), std::move(c));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

BigInt Polynomial::constant_term() const { return coefficient(Monomial{}); }

BigInt Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

std::vector<VarId> Polynomial::variables() const {
  std::vector<VarId> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) vars.push_back(f.first);
  }
  std::sort(vars.begin(), vars.end(), canonical_less);
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Polynomial::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      BigInt prod = ca * cb;
      auto [it, inserted] = out.terms_.try_emplace(ma * mb, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& kv : terms_) order.push_back(&kv);
  std::sort(order.begin(), order.end(),
            [](const auto* x, const auto* y) { return graded_less(x->first, y->first); });
  std::string out;
  bool first = true;
  for (const auto* term : order) {
    const auto& [m, c] = *term;
    bool negative = c < 0;
    BigInt magnitude = negative ? BigInt(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_unit()) {
      out += magnitude.str();
    } else {
      if (magnitude != 1) out += magnitude.str() + "*";
      out += m.to_string();
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial result;
    skip_ws();
    if (at_end()) throw error("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = term();
      result.add_term(m, sign * c);
      skip_ws();
    }
    return result;
  }

 private:
  std::pair<Monomial, BigInt> term() {
    BigInt coeff = 1;
    Monomial mono;
    while (true) {
      skip_ws();
      if (at_end()) throw error("unexpected end of input");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= integer();
      } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        VarId v = variable();
        unsigned e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          BigInt big = integer();
          if (big > 1000000) throw error("exponent too large");
          e = big.convert_to<unsigned>();
        }
        mono *= Monomial(v, e);
      } else {
        throw error(std::string("unexpected character '") + peek() + "'");
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      return {mono, coeff};
    }
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw error("expected integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  VarId variable() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    if (!at_end() && peek() == '[') {
      auto close = text_.find(']', pos_);
      if (close == std::string_view::npos) throw error("unterminated subscript");
      pos_ = close + 1;
    }
    std::string raw;
    for (char c : text_.substr(start, pos_ - start)) {
      if (!std::isspace(static_cast<unsigned char>(c))) raw += c;
    }
    return VarId::parse(raw);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::invalid_argument error(const std::string& what) const {
    return std::invalid_argument("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                                 std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return PolyParser(text).parse(); }

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

// ---------------------------------------------------------------- substitution

Polynomial substitute(const Polynomial& p, const VarMap& map) {
  std::unordered_map<VarId, std::vector<Polynomial>> powers;  // powers[v][e-1] = image^e
  auto power_of = [&](const VarId& v, unsigned e) -> const Polynomial& {
    auto it = powers.find(v);
    if (it == powers.end()) {
      auto image = map(v);
      if (!image) throw UnmappedVariable(v);
      it = powers.emplace(v, std::vector<Polynomial>{std::move(*image)}).first;
    }
    auto& list = it->second;
    while (list.size() < e) list.push_back(list.back() * list.front());
    return list[e - 1];
  };
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial term(c);
    for (const auto& [v, e] : m.factors()) {
      term *= power_of(v, e);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<VarId, Polynomial>& map) {
  return substitute(p, [&map](const VarId& v) -> std::optional<Polynomial> {
    auto it = map.find(v);
    if (it == map.end()) return std::nullopt;
    return it->second;
  });
}

VarMap keep_unmapped(VarMap inner) {
  return [inner = std::move(inner)](const VarId& v) -> std::optional<Polynomial> {
    if (auto image = inner(v)) return image;
    return Polynomial(v);
  };
}

// ---------------------------------------------------------------- modular

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mod(const BigInt& c, std::uint64_t p) {
  BigInt r = c % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t eval_mod(const Polynomial& p, const ResidueMap& assignment, std::uint64_t prime) {
  if (prime < 2) throw std::invalid_argument("modulus must be at least 2");
  std::unordered_map<VarId, std::uint64_t> values;
  auto value_of = [&](const VarId& v) {
    auto it = values.find(v);
    if (it != values.end()) return it->second;
    auto r = assignment(v);
    if (!r) throw UnmappedVariable(v);
    return values.emplace(v, *r % prime).first->second;
  };
  std::uint64_t total = 0;
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t term = reduce_mod(c, prime);
    for (const auto& [v, e] : m.factors()) term = mul_mod(term, pow_mod(value_of(v), e, prime), prime);
    total = (total + term) % prime;
  }
  return total;
}

std::uint64_t eval_mod(const Polynomial& p, const std::map<VarId, std::uint64_t>& assignment,
                       std::uint64_t prime) {
  return eval_mod(
      p,
      [&assignment](const VarId& v) -> std::optional<std::uint64_t> {
        auto it = assignment.find(v);
        if (it == assignment.end()) return std::nullopt;
        return it->second;
      },
      prime);
}

Polynomial qbracket(int n, const Polynomial& p, const Polynomial& q) {
  if (n < 0) throw std::invalid_argument("qbracket needs n >= 0");
  Polynomial sum;
  Polynomial p_pow(1);
  for (int i = 0; i < n; ++i) {
    sum += p_pow * q.pow(static_cast<unsigned>(n - 1 - i));
    p_pow *= p;
  }
  return sum;
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const Polynomial& p) {
  std::vector<std::pair<Monomial, BigInt>> order(p.terms().begin(), p.terms().end());
  std::sort(order.begin(), order.end(),
            [](const auto& x, const auto& y) { return graded_less(x.first, y.first); });
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : order) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& [v, e] : m.canonical_factors()) {
      nlohmann::json subs = nlohmann::json::array();
      for (int k = 0; k < v.arity(); ++k) subs.push_back(v.subscript(k));
      vars.push_back({{"family", std::string(v.family())}, {"subscripts", subs}, {"exp", e}});
    }
    terms.push_back({{"coeff", c.str()}, {"vars", vars}});
  }
  return {{"text", p.to_string()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  Polynomial out;
  for (const auto& term : j.at("terms")) {
    std::vector<Monomial::Factor> factors;
    for (const auto& var : term.at("vars")) {
      const auto family = var.at("family").get<std::string>();
      const auto& subs = var.at("subscripts");
      VarId v = subs.empty()       ? VarId(family)
                : subs.size() == 1 ? VarId(family, subs[0].get<int>())
                : subs.size() == 2 ? VarId(family, subs[0].get<int>(), subs[1].get<int>())
                                   : throw std::invalid_argument("too many subscripts");
      factors.emplace_back(v, var.at("exp").get<unsigned>());
    }
    out.add_term(Monomial::from_factors(std::move(factors)), BigInt(term.at("coeff").get<std::string>()));
  }
  return out;
}

}  // namespace cyclefrac
