#include "cyclefrac/families.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <unordered_map>

namespace cyclefrac {

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::perm: return "perm";
    case FamilyKind::dperm: return "dperm";
    case FamilyKind::cyclealt: return "cyclealt";
  }
  return "?";
}

std::optional<FamilyKind> family_kind_from_name(std::string_view name) {
  for (auto k : {FamilyKind::perm, FamilyKind::dperm, FamilyKind::cyclealt}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

int size_at_order(FamilyKind kind, int n) { return kind == FamilyKind::perm ? n : 2 * n; }

Caps Caps::from_env() {
  Caps caps;
  const char* raw = std::getenv("CYCLEFRAC_MAX_N");
  if (raw == nullptr || *raw == '\0') return caps;
  std::string_view text(raw);
  int value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value < 0) {
    throw std::invalid_argument("CYCLEFRAC_MAX_N must be a non-negative integer, got '" + std::string(text) + "'");
  }
  caps.perm = value;
  caps.paired = value;
  return caps;
}

CapExceeded::CapExceeded(Family f, int c)
    : std::runtime_error(std::string(to_string(f.kind)) + " size " + std::to_string(f.size) +
                         " exceeds the desk-scale cap " + std::to_string(c) +
                         " (raise it with --max-n or CYCLEFRAC_MAX_N)"),
      family(f),
      cap(c) {}

namespace {

void check_family(Family family, const Caps& caps) {
  if (family.size < 0) throw std::invalid_argument("negative family size");
  if (family.kind != FamilyKind::perm && family.size % 2 != 0) {
    throw std::invalid_argument(std::string(to_string(family.kind)) + " needs an even size, got " +
                                std::to_string(family.size));
  }
  if (family.size > caps.limit(family.kind)) throw CapExceeded(family, caps.limit(family.kind));
}

// Shared state for the two backtracking enumerators. word/where are 1-based;
// where[v] is the position holding value v, or 0.
struct Backtrack {
  int n;
  std::vector<int> word;
  std::vector<int> where;
  const std::function<void(const Permutation&)>& visit;

  Backtrack(int size, const std::function<void(const Permutation&)>& v)
      : n(size),
        word(static_cast<std::size_t>(size) + 1, 0),
        where(static_cast<std::size_t>(size) + 1, 0),
        visit(v) {}

  void emit() { visit(Permutation(std::vector<int>(word.begin() + 1, word.end()))); }

  void place(int pos, int v) {
    word[static_cast<std::size_t>(pos)] = v;
    where[static_cast<std::size_t>(v)] = pos;
  }
  void unplace(int pos, int v) {
    word[static_cast<std::size_t>(pos)] = 0;
    where[static_cast<std::size_t>(v)] = 0;
  }
  bool used(int v) const { return where[static_cast<std::size_t>(v)] != 0; }

  // Odd positions hold a value >= the position, even ones a value <= it.
  void dperm(int pos) {
    if (pos > n) {
      emit();
      return;
    }
    const bool odd = pos % 2 == 1;
    for (int v = odd ? pos : 1; v <= (odd ? n : pos); ++v) {
      if (used(v)) continue;
      place(pos, v);
      dperm(pos + 1);
      unplace(pos, v);
    }
  }

  // Index pos must be a cycle peak or valley: sigma(pos) lies on the same
  // side of pos as its preimage. If the preimage is not placed yet it lies to
  // the right, forcing sigma(pos) > pos. Placing v also fixes the preimage
  // of v; when v < pos its image is already known and must exceed v.
  void cyclealt(int pos) {
    if (pos > n) {
      emit();
      return;
    }
    const bool pre_left = used(pos);
    const int lo = pre_left ? 1 : pos + 1;
    const int hi = pre_left ? pos - 1 : n;
    for (int v = lo; v <= hi; ++v) {
      if (used(v)) continue;
      if (v < pos && word[static_cast<std::size_t>(v)] < v) continue;
      place(pos, v);
      cyclealt(pos + 1);
      unplace(pos, v);
    }
  }
};

}  // namespace

void for_each_member(Family family, const std::function<void(const Permutation&)>& visit, const Caps& caps) {
  check_family(family, caps);
  switch (family.kind) {
    case FamilyKind::perm: {
      std::vector<int> w(static_cast<std::size_t>(family.size));
      std::iota(w.begin(), w.end(), 1);
      do {
        visit(Permutation(w));
      } while (std::next_permutation(w.begin(), w.end()));
      break;
    }
    case FamilyKind::dperm: {
      Backtrack bt(family.size, visit);
      bt.dperm(1);
      break;
    }
    case FamilyKind::cyclealt: {
      Backtrack bt(family.size, visit);
      bt.cyclealt(1);
      break;
    }
  }
}

std::vector<Permutation> enumerate(Family family, const Caps& caps) {
  std::vector<Permutation> out;
  for_each_member(family, [&out](const Permutation& p) { out.push_back(p); }, caps);
  return out;
}

bool is_member(FamilyKind kind, const Permutation& p) {
  switch (kind) {
    case FamilyKind::perm: return true;
    case FamilyKind::dperm: return is_d_permutation(p);
    case FamilyKind::cyclealt: return is_cycle_alternating(p);
  }
  return false;
}

// ---------------------------------------------------------------- schemes

namespace {

std::vector<CountRule> counts(std::initializer_list<std::pair<Stat, const char*>> list) {
  std::vector<CountRule> out;
  for (const auto& [stat, fam] : list) out.push_back({stat, fam});
  return out;
}

std::vector<CountRule> join(std::vector<CountRule> a, const std::vector<CountRule>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<CountRule>& perm_records() {
  static const auto rules = counts({
      {Stat::eareccpeak, "x1"}, {Stat::eareccdfall, "x2"}, {Stat::ereccval, "y1"}, {Stat::ereccdrise, "y2"},
      {Stat::nrcpeak, "u1"},    {Stat::nrcdfall, "u2"},    {Stat::nrcval, "v1"},   {Stat::nrcdrise, "v2"},
  });
  return rules;
}

const std::vector<CountRule>& perm_crossnest() {
  static const auto rules = counts({
      {Stat::ucrosscval, "pp1"}, {Stat::ucrosscdrise, "pp2"}, {Stat::lcrosscpeak, "pm1"},
      {Stat::lcrosscdfall, "pm2"}, {Stat::unestcval, "qp1"}, {Stat::unestcdrise, "qp2"},
      {Stat::lnestcpeak, "qm1"},  {Stat::lnestcdfall, "qm2"},
  });
  return rules;
}

const std::vector<CountRule>& dperm_fixed() {
  static const auto rules = counts({
      {Stat::evenrar, "ze"}, {Stat::oddrar, "zo"}, {Stat::evennrfix, "we"}, {Stat::oddnrfix, "wo"},
  });
  return rules;
}

const std::vector<CountRule>& cyclealt_records() {
  static const auto rules = counts({
      {Stat::eareccpeakeven, "xe"}, {Stat::ereccvaleven, "ye"}, {Stat::nrcpeakeven, "ue"},
      {Stat::nrcvaleven, "ve"},     {Stat::eareccpeakodd, "xo"}, {Stat::ereccvalodd, "yo"},
      {Stat::nrcpeakodd, "uo"},     {Stat::nrcvalodd, "vo"},
  });
  return rules;
}

std::vector<IndexedRule> master_rules(bool split_fixed) {
  std::vector<IndexedRule> rules = {
      {Selector::cval, "a", SubscriptSource::crossnest},
      {Selector::cpeak, "b", SubscriptSource::crossnest},
      {Selector::cdfall, "c", SubscriptSource::crossnest},
      {Selector::cdrise, "d", SubscriptSource::crossnest},
  };
  if (split_fixed) {
    rules.push_back({Selector::evenfix, "e", SubscriptSource::psnest});
    rules.push_back({Selector::oddfix, "f", SubscriptSource::psnest});
  } else {
    rules.push_back({Selector::fix, "e", SubscriptSource::psnest});
  }
  return rules;
}

std::vector<WeightScheme> make_schemes() {
  const IndexedRule w_rule{Selector::fix, "w", SubscriptSource::psnest};
  std::vector<WeightScheme> s;
  s.push_back({"master-perm", FamilyKind::perm, master_rules(false), {}});
  s.push_back({"big-perm-pq", FamilyKind::perm, {w_rule},
               join(join(perm_records(), perm_crossnest()), counts({{Stat::psnest, "s"}}))});
  s.push_back({"simple-perm", FamilyKind::perm, {w_rule}, perm_records()});
  s.push_back({"master-dperm", FamilyKind::dperm, master_rules(true), {}});
  s.push_back({"pq-dperm", FamilyKind::dperm, {},
               join(join(join(perm_records(), dperm_fixed()), perm_crossnest()),
                    counts({{Stat::epsnest, "se"}, {Stat::opsnest, "so"}}))});
  s.push_back({"simple-dperm", FamilyKind::dperm, {}, join(perm_records(), dperm_fixed())});
  s.push_back({"xy-dperm", FamilyKind::dperm, {}, counts({{Stat::arec, "x"}, {Stat::erec, "y"}})});
  s.push_back({"master-cyclealt",
               FamilyKind::cyclealt,
               {{Selector::cval, "a", SubscriptSource::crossnest}, {Selector::cpeak, "b", SubscriptSource::crossnest}},
               {}});
  s.push_back({"evenodd-cyclealt-pq", FamilyKind::cyclealt, {},
               join(cyclealt_records(), counts({
                                            {Stat::lcrosscpeakeven, "pm1"},
                                            {Stat::lcrosscpeakodd, "pm2"},
                                            {Stat::ucrosscvalodd, "pp1"},
                                            {Stat::ucrosscvaleven, "pp2"},
                                            {Stat::lnestcpeakeven, "qm1"},
                                            {Stat::lnestcpeakodd, "qm2"},
                                            {Stat::unestcvalodd, "qp1"},
                                            {Stat::unestcvaleven, "qp2"},
                                        }))});
  s.push_back({"simple-cyclealt", FamilyKind::cyclealt, {}, cyclealt_records()});
  return s;
}

bool selects(Selector sel, const IndexData& d, int i) {
  switch (sel) {
    case Selector::cval: return d.cycle == CycleClass::cval;
    case Selector::cpeak: return d.cycle == CycleClass::cpeak;
    case Selector::cdrise: return d.cycle == CycleClass::cdrise;
    case Selector::cdfall: return d.cycle == CycleClass::cdfall;
    case Selector::fix: return d.cycle == CycleClass::fix;
    case Selector::evenfix: return d.cycle == CycleClass::fix && i % 2 == 0;
    case Selector::oddfix: return d.cycle == CycleClass::fix && i % 2 == 1;
  }
  return false;
}

// A scheme with its family names interned once.
struct CompiledScheme {
  struct Indexed {
    Selector selector;
    VarId proto;
    SubscriptSource source;
  };
  struct Count {
    Stat stat;
    VarId var;
  };
  std::vector<Indexed> indexed;
  std::vector<Count> counts;

  explicit CompiledScheme(const WeightScheme& s) {
    for (const auto& r : s.indexed) indexed.push_back({r.selector, VarId(r.family), r.source});
    for (const auto& r : s.counts) counts.push_back({r.stat, VarId(r.family)});
  }

  void factors(const std::vector<IndexData>& data, const StatProfile& prof,
               std::vector<Monomial::Factor>& out) const {
    out.clear();
    for (const auto& r : indexed) {
      for (std::size_t k = 0; k < data.size(); ++k) {
        const auto& d = data[k];
        if (!selects(r.selector, d, static_cast<int>(k) + 1)) continue;
        if (r.source == SubscriptSource::psnest) {
          out.emplace_back(r.proto.indexed(d.refined.psnest), 1U);
        } else if (d.cycle == CycleClass::cval || d.cycle == CycleClass::cdrise) {
          out.emplace_back(r.proto.indexed(d.refined.ucross, d.refined.unest), 1U);
        } else {
          out.emplace_back(r.proto.indexed(d.refined.lcross, d.refined.lnest), 1U);
        }
      }
    }
    for (const auto& r : counts) {
      const long long c = prof[r.stat];
      if (c > 0) out.emplace_back(r.var, static_cast<unsigned>(c));
    }
  }
};

}  // namespace

const std::vector<WeightScheme>& builtin_schemes() {
  static const std::vector<WeightScheme> schemes = make_schemes();
  return schemes;
}

const WeightScheme& scheme(std::string_view name) {
  std::string names;
  for (const auto& s : builtin_schemes()) {
    if (s.name == name) return s;
    names += names.empty() ? "" : ", ";
    names += s.name;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (available: " + names + ")");
}

std::vector<Monomial::Factor> weight_factors(const WeightScheme& s, const Permutation&,
                                             const std::vector<IndexData>& data, const StatProfile& prof) {
  std::vector<Monomial::Factor> out;
  CompiledScheme(s).factors(data, prof, out);
  return out;
}

Monomial weight(const WeightScheme& s, const Permutation& p) {
  const auto data = analyze(p);
  const auto prof = profile(p, data);
  auto f = weight_factors(s, p, data, prof);
  if (prof[Stat::cyc] > 0) f.emplace_back(lambda_var(), static_cast<unsigned>(prof[Stat::cyc]));
  return Monomial::from_factors(std::move(f));
}

Polynomial generating_polynomial(Family family, const WeightScheme& s, const Caps& caps) {
  const CompiledScheme compiled(s);
  const VarId lambda = lambda_var();
  std::map<Monomial, long long> acc;
  std::vector<Monomial::Factor> f;
  for_each_member(
      family,
      [&](const Permutation& p) {
        const auto data = analyze(p);
        const auto prof = profile(p, data);
        compiled.factors(data, prof, f);
        if (prof[Stat::cyc] > 0) f.emplace_back(lambda, static_cast<unsigned>(prof[Stat::cyc]));
        ++acc[Monomial::from_factors(f)];
      },
      caps);
  Polynomial out;
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

std::optional<LambdaValue> lambda_from_text(std::string_view text) {
  if (text == "1" || text == "+1") return LambdaValue::plus_one;
  if (text == "-1") return LambdaValue::minus_one;
  if (text == "lambda" || text == "symbolic") return LambdaValue::symbolic;
  return std::nullopt;
}

std::string_view to_string(LambdaValue l) {
  switch (l) {
    case LambdaValue::plus_one: return "1";
    case LambdaValue::minus_one: return "-1";
    case LambdaValue::symbolic: return "lambda";
  }
  return "?";
}

TruncatedSeries<Polynomial> series_of_family(FamilyKind kind, const WeightScheme& s, LambdaValue lambda, int N,
                                             const VarMap& substitution, const Caps& caps) {
  if (N < 0) throw std::invalid_argument("negative series order");
  // Check the cap for the largest size before doing any work.
  check_family(Family{kind, size_at_order(kind, N)}, caps);
  const CompiledScheme compiled(s);
  const VarId lambda_id = lambda_var();
  const VarMap keep = substitution ? keep_unmapped(substitution) : VarMap{};
  TruncatedSeries<Polynomial> out(N);
  std::vector<Monomial::Factor> f;
  for (int n = 0; n <= N; ++n) {
    std::map<Monomial, long long> acc;
    for_each_member(
        Family{kind, size_at_order(kind, n)},
        [&](const Permutation& p) {
          const auto data = analyze(p);
          const auto prof = profile(p, data);
          compiled.factors(data, prof, f);
          const long long cyc = prof[Stat::cyc];
          long long sign = 1;
          if (lambda == LambdaValue::symbolic && cyc > 0) f.emplace_back(lambda_id, static_cast<unsigned>(cyc));
          if (lambda == LambdaValue::minus_one && cyc % 2 == 1) sign = -1;
          acc[Monomial::from_factors(f)] += sign;
        },
        caps);
    Polynomial coeff;
    for (const auto& [m, c] : acc) {
      if (c != 0) coeff.add_term(m, c);
    }
    out[n] = keep ? substitute(coeff, keep) : std::move(coeff);
  }
  return out;
}

std::vector<TruncatedSeries<Mod61>> modular_series_of_family(FamilyKind kind, const WeightScheme& s,
                                                             LambdaValue lambda, int N,
                                                             const std::vector<ResidueMap>& assignments,
                                                             const Caps& caps) {
  if (N < 0) throw std::invalid_argument("negative series order");
  check_family(Family{kind, size_at_order(kind, N)}, caps);
  const CompiledScheme compiled(s);
  const VarId lambda_id = lambda_var();
  const std::size_t trials = assignments.size();
  std::vector<std::unordered_map<VarId, Mod61>> cache(trials);
  auto residue = [&](std::size_t t, const VarId& v) {
    auto it = cache[t].find(v);
    if (it != cache[t].end()) return it->second;
    auto r = assignments[t](v);
    if (!r) throw UnmappedVariable(v);
    const Mod61 m = Mod61::from_residue(*r);
    cache[t].emplace(v, m);
    return m;
  };

  std::vector<TruncatedSeries<Mod61>> out(trials, TruncatedSeries<Mod61>(N));
  std::vector<Monomial::Factor> f;
  for (int n = 0; n <= N; ++n) {
    std::vector<Mod61> sums(trials);
    for_each_member(
        Family{kind, size_at_order(kind, n)},
        [&](const Permutation& p) {
          const auto data = analyze(p);
          const auto prof = profile(p, data);
          compiled.factors(data, prof, f);
          const long long cyc = prof[Stat::cyc];
          if (lambda == LambdaValue::symbolic && cyc > 0) f.emplace_back(lambda_id, static_cast<unsigned>(cyc));
          const bool negate = lambda == LambdaValue::minus_one && cyc % 2 == 1;
          for (std::size_t t = 0; t < trials; ++t) {
            Mod61 term(1);
            for (const auto& [v, e] : f) term *= e == 1 ? residue(t, v) : residue(t, v).pow(e);
            if (negate) {
              sums[t] -= term;
            } else {
              sums[t] += term;
            }
          }
        },
        caps);
    for (std::size_t t = 0; t < trials; ++t) out[t][n] = sums[t];
  }
  return out;
}

// ---------------------------------------------------------------- specializations

namespace {

Polynomial power(std::string_view family, int e) { return Polynomial(VarId(family)).pow(static_cast<unsigned>(e)); }

// p^l q^l' times (head if l' = 0 else tail).
Polynomial pq_weight(const VarId& v, const char* p, const char* q, const char* head, const char* tail) {
  const int l = v.subscript(0);
  const int lp = v.subscript(1);
  return power(p, l) * power(q, lp) * Polynomial(VarId(lp == 0 ? head : tail));
}

std::optional<Polynomial> crossnest_pq(const VarId& v) {
  if (v.arity() != 2) return std::nullopt;
  const auto fam = v.family();
  if (fam == "a") return pq_weight(v, "pp1", "qp1", "y1", "v1");
  if (fam == "b") return pq_weight(v, "pm1", "qm1", "x1", "u1");
  if (fam == "c") return pq_weight(v, "pm2", "qm2", "x2", "u2");
  if (fam == "d") return pq_weight(v, "pp2", "qp2", "y2", "v2");
  return std::nullopt;
}

}  // namespace

VarMap perm_pq_specialization() {
  return [](const VarId& v) -> std::optional<Polynomial> {
    if (auto r = crossnest_pq(v)) return r;
    if (v.family() == "e" && v.arity() == 1) return power("s", v.subscript(0)) * Polynomial(VarId("w", v.subscript(0)));
    return std::nullopt;
  };
}

VarMap dperm_pq_specialization() {
  return [](const VarId& v) -> std::optional<Polynomial> {
    if (auto r = crossnest_pq(v)) return r;
    if (v.arity() != 1) return std::nullopt;
    const int l = v.subscript(0);
    if (v.family() == "e") return l == 0 ? Polynomial(VarId("ze")) : power("se", l) * Polynomial(VarId("we"));
    if (v.family() == "f") return l == 0 ? Polynomial(VarId("zo")) : power("so", l) * Polynomial(VarId("wo"));
    return std::nullopt;
  };
}

VarMap cyclealt_pq_specialization() {
  return [](const VarId& v) -> std::optional<Polynomial> {
    if (v.arity() != 2) return std::nullopt;
    const bool even = (v.subscript(0) + v.subscript(1)) % 2 == 0;
    if (v.family() == "a") {
      return even ? pq_weight(v, "pp1", "qp1", "yo", "vo") : pq_weight(v, "pp2", "qp2", "ye", "ve");
    }
    if (v.family() == "b") {
      return even ? pq_weight(v, "pm1", "qm1", "xe", "ue") : pq_weight(v, "pm2", "qm2", "xo", "uo");
    }
    return std::nullopt;
  };
}

VarMap pq_to_simple() {
  return [](const VarId& v) -> std::optional<Polynomial> {
    static const std::vector<std::string_view> ones = {"pp1", "pp2", "pm1", "pm2", "qp1", "qp2",
                                                       "qm1", "qm2", "s",   "se",  "so"};
    if (v.arity() == 0 && std::find(ones.begin(), ones.end(), v.family()) != ones.end()) return Polynomial(1);
    return std::nullopt;
  };
}

VarMap simple_dperm_to_xy() {
  return [](const VarId& v) -> std::optional<Polynomial> {
    if (v.arity() != 0) return std::nullopt;
    const auto fam = v.family();
    if (fam == "x1" || fam == "x2" || fam == "ze" || fam == "zo") return Polynomial(VarId("x"));
    if (fam == "y1" || fam == "y2") return Polynomial(VarId("y"));
    if (fam == "u1" || fam == "u2" || fam == "v1" || fam == "v2" || fam == "we" || fam == "wo") return Polynomial(1);
    return std::nullopt;
  };
}

VarMap all_variables(const Polynomial& value) {
  return [value](const VarId& v) -> std::optional<Polynomial> {
    if (v == lambda_var()) return std::nullopt;
    return value;
  };
}

}  // namespace cyclefrac
