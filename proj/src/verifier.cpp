#include "cyclefrac/verifier.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace cyclefrac {

std::string_view to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::symbolic: return "symbolic";
    case VerifyMode::modular: return "modular";
    case VerifyMode::predicate: return "predicate";
  }
  return "?";
}

std::optional<VerifyMode> verify_mode_from_name(std::string_view name) {
  for (auto m : {VerifyMode::symbolic, VerifyMode::modular, VerifyMode::predicate}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

std::string available_ids() {
  std::string out;
  for (const auto& c : identities()) {
    if (!out.empty()) out += ", ";
    out += c.id;
  }
  return out;
}

using Gen = std::function<Polynomial(int)>;
using Spec = FractionSpec<Polynomial>;

Polynomial var(const char* name) { return Polynomial(VarId(name)); }
Polynomial var(const char* name, int i) { return Polynomial(VarId(name, i)); }

// sum_{l=0}^{m-1} s^l fam[l, m-1-l] with s = +1 or -1.
Polynomial diagonal(const char* fam, int m, int s) {
  Polynomial out;
  for (int l = 0; l < m; ++l) {
    Polynomial term(VarId(fam, l, m - 1 - l));
    out += (s < 0 && l % 2 == 1) ? -term : term;
  }
  return out;
}

// (-p)^(n-1) x + q [n-1]_{-p,q} u
Polynomial pq_term(int n, const char* p, const char* q, const char* x, const char* u) {
  const Polynomial minus_p = -var(p);
  return minus_p.pow(static_cast<unsigned>(n - 1)) * var(x) + var(q) * qbracket(n - 1, minus_p, var(q)) * var(u);
}

Polynomial zero_for_level_two_up(int n, const Polynomial& first) { return n == 1 ? first : Polynomial(0); }

// ---- permutations, J-fractions

Spec perm_master(int lam) {
  return Spec::J(
      [lam](int n) {
        if (lam > 0) return diagonal("c", n, 1) + diagonal("d", n, 1) + var("e", n);
        return diagonal("c", n, -1) + diagonal("d", n, -1) - var("e", n);
      },
      [lam](int n) {
        if (lam > 0) return diagonal("a", n, 1) * diagonal("b", n, 1);
        return -(diagonal("a", n, -1) * diagonal("b", n, -1));
      });
}

Spec perm_pq() {
  return Spec::J(
      [](int n) {
        if (n == 0) return -var("w", 0);
        return pq_term(n, "pm2", "qm2", "x2", "u2") + pq_term(n, "pp2", "qp2", "y2", "v2") -
               var("s").pow(static_cast<unsigned>(n)) * var("w", n);
      },
      [](int n) { return -(pq_term(n, "pm1", "qm1", "x1", "u1") * pq_term(n, "pp1", "qp1", "y1", "v1")); });
}

Spec perm_simple() {
  return Spec::J(
      [](int n) {
        if (n == 0) return -var("w", 0);
        if (n % 2 == 1) return var("x2") + var("y2") - var("w", n);
        return -var("x2") + var("u2") - var("y2") + var("v2") - var("w", n);
      },
      [](int n) {
        if (n % 2 == 1) return -(var("x1") * var("y1"));
        return -((var("x1") - var("u1")) * (var("y1") - var("v1")));
      });
}

// ---- cycle-alternating permutations, S-fractions

Spec cyclealt_master() {
  return Spec::S([](int n) { return -(diagonal("a", n, -1) * diagonal("b", n, -1)); });
}

Spec cyclealt_pq() {
  return Spec::S([](int n) {
    if (n % 2 == 1) return -(pq_term(n, "pm1", "qm1", "xe", "ue") * pq_term(n, "pp1", "qp1", "yo", "vo"));
    return -(pq_term(n, "pm2", "qm2", "xo", "uo") * pq_term(n, "pp2", "qp2", "ye", "ve"));
  });
}

Spec cyclealt_simple() {
  return Spec::S([](int n) {
    if (n % 2 == 1) return -(var("xe") * var("yo"));
    return -((var("xo") - var("uo")) * (var("ye") - var("ve")));
  });
}

// ---- D-permutations, T-fractions

Spec dperm_master(int lam) {
  return Spec::T(
      [lam](int n) {
        const int k = (n + 1) / 2;
        if (n % 2 == 1) {
          if (lam > 0) return diagonal("a", k, 1) * diagonal("b", k, 1);
          return -(diagonal("a", k, -1) * diagonal("b", k, -1));
        }
        if (lam > 0) return (var("e", k) + diagonal("c", k, 1)) * (var("f", k) + diagonal("d", k, 1));
        return (diagonal("c", k, -1) - var("e", k)) * (diagonal("d", k, -1) - var("f", k));
      },
      [](int n) { return zero_for_level_two_up(n, var("e", 0) * var("f", 0)); });
}

Spec dperm_pq() {
  return Spec::T(
      [](int n) {
        const int k = (n + 1) / 2;
        if (n % 2 == 1) return -(pq_term(k, "pm1", "qm1", "x1", "u1") * pq_term(k, "pp1", "qp1", "y1", "v1"));
        const auto ku = static_cast<unsigned>(k);
        return (pq_term(k, "pm2", "qm2", "x2", "u2") - var("se").pow(ku) * var("we")) *
               (pq_term(k, "pp2", "qp2", "y2", "v2") - var("so").pow(ku) * var("wo"));
      },
      [](int n) { return zero_for_level_two_up(n, var("ze") * var("zo")); });
}

Spec dperm_simple() {
  return Spec::T(
      [](int n) {
        const int k = (n + 1) / 2;
        if (n % 2 == 1) {
          if (k % 2 == 1) return -(var("x1") * var("y1"));
          return -((var("x1") - var("u1")) * (var("y1") - var("v1")));
        }
        if (k % 2 == 1) return (var("x2") - var("we")) * (var("y2") - var("wo"));
        return (var("x2") - var("u2") + var("we")) * (var("y2") - var("v2") + var("wo"));
      },
      [](int n) { return zero_for_level_two_up(n, var("ze") * var("zo")); });
}

Spec dperm_xy() {
  return Spec::J(
      [](int n) { return n == 0 ? var("x") * (var("x") - var("y")) : Polynomial(0); },
      [](int) { return -(var("x") * var("y") * (var("x") - 1) * (var("y") - 1)); });
}

IdentityCase series_case(std::string id, std::string title, FamilyKind family, std::string scheme,
                         LambdaValue lambda, std::function<Spec()> fraction, int max_symbolic, int max_modular) {
  IdentityCase c;
  c.id = std::move(id);
  c.title = std::move(title);
  c.family = family;
  c.scheme = std::move(scheme);
  c.lambda = lambda;
  c.fraction = std::move(fraction);
  c.max_symbolic = max_symbolic;
  c.max_modular = max_modular;
  return c;
}

IdentityCase predicate_case(std::string id, std::string title, FamilyKind family,
                            std::function<bool(const Permutation&)> predicate, int max_order) {
  IdentityCase c;
  c.id = std::move(id);
  c.title = std::move(title);
  c.is_predicate = true;
  c.family = family;
  c.predicate = std::move(predicate);
  c.max_predicate = max_order;
  return c;
}

std::vector<IdentityCase> make_registry() {
  using F = FamilyKind;
  using L = LambdaValue;
  std::vector<IdentityCase> r;
  r.push_back(series_case("PERM-J-MASTER-L1", "master J-fraction for permutations, lambda = 1", F::perm,
                          "master-perm", L::plus_one, [] { return perm_master(1); }, 5, 9));
  r.push_back(series_case("PERM-J-MASTER-LM1", "master J-fraction for permutations, lambda = -1", F::perm,
                          "master-perm", L::minus_one, [] { return perm_master(-1); }, 5, 9));
  r.push_back(series_case("PERM-J-PQ-LM1", "p,q J-fraction for permutations, lambda = -1", F::perm, "big-perm-pq",
                          L::minus_one, perm_pq, 5, 9));
  r.push_back(series_case("PERM-J-SIMPLE-LM1", "simple J-fraction for permutations, lambda = -1", F::perm,
                          "simple-perm", L::minus_one, perm_simple, 7, 9));
  r.push_back(series_case("CA-S-MASTER-LM1", "master S-fraction for cycle-alternating permutations, lambda = -1",
                          F::cyclealt, "master-cyclealt", L::minus_one, cyclealt_master, 4, 6));
  r.push_back(series_case("CA-S-PQ-LM1", "p,q S-fraction for cycle-alternating permutations, lambda = -1",
                          F::cyclealt, "evenodd-cyclealt-pq", L::minus_one, cyclealt_pq, 4, 6));
  r.push_back(series_case("CA-S-SIMPLE-LM1", "simple S-fraction for cycle-alternating permutations, lambda = -1",
                          F::cyclealt, "simple-cyclealt", L::minus_one, cyclealt_simple, 5, 6));
  r.push_back(series_case("DP-T-MASTER-L1", "master T-fraction for D-permutations, lambda = 1", F::dperm,
                          "master-dperm", L::plus_one, [] { return dperm_master(1); }, 4, 6));
  r.push_back(series_case("DP-T-MASTER-LM1", "master T-fraction for D-permutations, lambda = -1", F::dperm,
                          "master-dperm", L::minus_one, [] { return dperm_master(-1); }, 4, 6));
  r.push_back(series_case("DP-T-PQ-LM1", "p,q T-fraction for D-permutations, lambda = -1", F::dperm, "pq-dperm",
                          L::minus_one, dperm_pq, 4, 6));
  r.push_back(series_case("DP-T-SIMPLE-LM1", "simple T-fraction for D-permutations, lambda = -1", F::dperm,
                          "simple-dperm", L::minus_one, dperm_simple, 5, 6));
  r.push_back(series_case("DP-J-XY-LM1", "x,y J-fraction for D-permutations, lambda = -1", F::dperm, "xy-dperm",
                          L::minus_one, dperm_xy, 6, 6));
  r.push_back(predicate_case("LEMMA-1-1", "cyc = fix + cpeak + ucross + lcross = fix + cval + ucross + lcross mod 2",
                             F::perm, check_lemma_1_1, 8));
  r.push_back(predicate_case("INV-FORMULA", "inv = cval + cdrise + cdfall + ucross + lcross + 2(unest + lnest + psnest)",
                             F::perm, check_inv_formula, 8));
  r.push_back(predicate_case("LEMMA-4-2", "crossing/nesting parity at peaks and valleys of cycle-alternating permutations",
                             F::cyclealt, check_lemma_4_2, 5));
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

long long family_count(FamilyKind kind, int order, const Caps& caps) {
  long long count = 0;
  for_each_member(Family{kind, size_at_order(kind, order)}, [&count](const Permutation&) { ++count; }, caps);
  return count;
}

VerifyReport verify_predicate(const IdentityCase& c, int order, const Caps& caps) {
  VerifyReport rep;
  rep.id = c.id;
  rep.mode = VerifyMode::predicate;
  rep.pass = true;
  for (int k = 1; k <= order && rep.pass; ++k) {
    OrderResult res{k, true, 0};
    for_each_member(
        Family{c.family, size_at_order(c.family, k)},
        [&](const Permutation& p) {
          ++res.checked;
          if (!res.pass || c.predicate(p)) return;
          res.pass = false;
          Witness w;
          w.order = k;
          w.permutation = p.to_string();
          rep.witness = w;
        },
        caps);
    rep.pass = res.pass;
    rep.orders.push_back(res);
  }
  return rep;
}

VerifyReport verify_symbolic(const IdentityCase& c, int order, const Caps& caps) {
  VerifyReport rep;
  rep.id = c.id;
  rep.mode = VerifyMode::symbolic;
  const auto lhs = series_of_family(c.family, scheme(c.scheme), c.lambda, order, nullptr, caps);
  const auto rhs = expand(c.fraction(), order);
  rep.pass = true;
  for (int k = 0; k <= order && rep.pass; ++k) {
    OrderResult res{k, lhs[k] == rhs[k], family_count(c.family, k, caps)};
    if (!res.pass) {
      Witness w;
      w.order = k;
      w.enumeration = lhs[k].to_string();
      w.fraction = rhs[k].to_string();
      w.difference = (lhs[k] - rhs[k]).to_string();
      rep.witness = w;
      rep.pass = false;
    }
    rep.orders.push_back(res);
  }
  return rep;
}

VerifyReport verify_modular(const IdentityCase& c, int order, std::uint64_t seed, int trials, const Caps& caps) {
  if (trials < 1) throw std::invalid_argument("modular verification needs at least one trial");
  VerifyReport rep;
  rep.id = c.id;
  rep.mode = VerifyMode::modular;
  std::vector<ResidueMap> assignments;
  for (int t = 0; t < trials; ++t) assignments.push_back(random_assignment(seed, t));
  const auto lhs = modular_series_of_family(c.family, scheme(c.scheme), c.lambda, order, assignments, caps);
  const Spec spec = c.fraction();
  std::vector<TruncatedSeries<Mod61>> rhs;
  for (int t = 0; t < trials; ++t) {
    const auto& a = assignments[static_cast<std::size_t>(t)];
    auto reduce = [a](const FractionSpec<Polynomial>::Generator& g) -> FractionSpec<Mod61>::Generator {
      if (!g) return {};
      return [g, a](int n) { return Mod61::from_residue(eval_mod(g(n), a)); };
    };
    FractionSpec<Mod61> m{spec.kind, reduce(spec.alpha), reduce(spec.delta), reduce(spec.gamma), reduce(spec.beta)};
    rhs.push_back(expand(m, order));
  }
  rep.pass = true;
  for (int k = 0; k <= order && rep.pass; ++k) {
    OrderResult res{k, true, family_count(c.family, k, caps)};
    for (int t = 0; t < trials && res.pass; ++t) {
      const auto& l = lhs[static_cast<std::size_t>(t)][k];
      const auto& r = rhs[static_cast<std::size_t>(t)][k];
      if (l == r) continue;
      res.pass = false;
      Witness w;
      w.order = k;
      w.trial = t;
      w.enumeration = l.to_string();
      w.fraction = r.to_string();
      w.difference = (l - r).to_string();
      rep.witness = w;
    }
    rep.pass = res.pass;
    rep.orders.push_back(res);
  }
  return rep;
}

}  // namespace

UnknownIdentity::UnknownIdentity(std::string_view id)
    : std::invalid_argument("unknown identity '" + std::string(id) + "' (available: " + available_ids() + ")") {}

const std::vector<IdentityCase>& identities() {
  static const std::vector<IdentityCase> registry = make_registry();
  return registry;
}

const IdentityCase& identity(std::string_view id) {
  for (const auto& c : identities()) {
    if (c.id == id) return c;
  }
  throw UnknownIdentity(id);
}

TruncatedSeries<Polynomial> cf_side(std::string_view id, int N) {
  const auto& c = identity(id);
  if (c.is_predicate) throw std::invalid_argument(c.id + " is a predicate, not a continued fraction");
  return expand(c.fraction(), N);
}

TruncatedSeries<Polynomial> enum_side(std::string_view id, int N, const Caps& caps) {
  const auto& c = identity(id);
  if (c.is_predicate) throw std::invalid_argument(c.id + " is a predicate, not a series");
  return series_of_family(c.family, scheme(c.scheme), c.lambda, N, nullptr, caps);
}

ResidueMap random_assignment(std::uint64_t seed, int trial) {
  return [seed, trial](const VarId& v) -> std::optional<std::uint64_t> {
    std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
    h = splitmix64(h ^ fnv1a(v.to_string()));
    return h % kDefaultPrime;
  };
}

long long VerifyReport::checked() const {
  long long total = 0;
  for (const auto& o : orders) total += o.checked;
  return total;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["mode"] = std::string(cyclefrac::to_string(mode));
  j["status"] = pass ? "pass" : "fail";
  j["orders"] = nlohmann::json::array();
  for (const auto& o : orders) {
    j["orders"].push_back({{"order", o.order}, {"status", o.pass ? "pass" : "fail"}, {"checked", o.checked}});
  }
  j["checked"] = checked();
  if (witness) {
    nlohmann::json w;
    w["order"] = witness->order;
    if (mode == VerifyMode::predicate) {
      w["permutation"] = witness->permutation;
    } else {
      w["enumeration"] = witness->enumeration;
      w["fraction"] = witness->fraction;
      w["difference"] = witness->difference;
      if (witness->trial) w["trial"] = *witness->trial;
    }
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["millis"] = static_cast<long long>(millis + 0.5);
  return j;
}

VerifyReport verify(std::string_view id, const VerifyOptions& options) {
  const auto& c = identity(id);
  const Caps caps = options.caps ? *options.caps : Caps::from_env();
  const auto start = Clock::now();
  VerifyReport rep;
  if (c.is_predicate) {
    if (options.mode && *options.mode != VerifyMode::predicate) {
      throw std::invalid_argument(c.id + " only supports predicate mode");
    }
    rep = verify_predicate(c, options.order >= 0 ? options.order : c.max_predicate, caps);
  } else {
    const VerifyMode mode = options.mode.value_or(VerifyMode::symbolic);
    if (mode == VerifyMode::predicate) throw std::invalid_argument(c.id + " is a series identity, not a predicate");
    if (mode == VerifyMode::symbolic) {
      rep = verify_symbolic(c, options.order >= 0 ? options.order : c.max_symbolic, caps);
    } else {
      rep = verify_modular(c, options.order >= 0 ? options.order : c.max_modular, options.seed, options.trials, caps);
    }
  }
  rep.millis = elapsed_ms(start);
  return rep;
}

std::string report_table(const std::vector<VerifyReport>& reports) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-20s %-10s %-7s %-6s %12s %10s\n", "id", "mode", "orders", "status", "checked",
                "millis");
  out << line;
  for (const auto& r : reports) {
    const std::string orders =
        r.orders.empty() ? "-" : std::to_string(r.orders.front().order) + ".." + std::to_string(r.orders.back().order);
    std::snprintf(line, sizeof line, "%-20s %-10s %-7s %-6s %12lld %10.0f\n", r.id.c_str(),
                  std::string(to_string(r.mode)).c_str(), orders.c_str(), r.pass ? "pass" : "FAIL", r.checked(),
                  r.millis);
    out << line;
    if (r.witness) {
      const auto& w = *r.witness;
      if (r.mode == VerifyMode::predicate) {
        out << "  counterexample at order " << w.order << ": " << w.permutation << '\n';
      } else {
        out << "  first mismatch at t^" << w.order;
        if (w.trial) out << " (trial " << *w.trial << ")";
        out << "\n    enumeration: " << w.enumeration << "\n    fraction:    " << w.fraction
            << "\n    difference:  " << w.difference << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace cyclefrac
