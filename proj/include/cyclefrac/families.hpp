#ifndef CYCLEFRAC_FAMILIES_HPP
#define CYCLEFRAC_FAMILIES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cyclefrac/cfkit.hpp"
#include "cyclefrac/modint.hpp"
#include "cyclefrac/permstat.hpp"
#include "cyclefrac/polyring.hpp"

namespace cyclefrac {

enum class FamilyKind { perm, dperm, cyclealt };

std::string_view to_string(FamilyKind k);
std::optional<FamilyKind> family_kind_from_name(std::string_view name);

/// Permutations of [size]; dperm and cyclealt require an even size.
struct Family {
  FamilyKind kind = FamilyKind::perm;
  int size = 0;

  static Family perm(int n) { return {FamilyKind::perm, n}; }
  static Family dperm(int size) { return {FamilyKind::dperm, size}; }
  static Family cyclealt(int size) { return {FamilyKind::cyclealt, size}; }
};

/// Permutation size of the t^n coefficient: n for perm, 2n otherwise.
int size_at_order(FamilyKind kind, int n);

/// Largest permutation size the enumerators accept.
struct Caps {
  int perm = 9;
  int paired = 12;

  /// Defaults, overridden by CYCLEFRAC_MAX_N (applies to every family).
  static Caps from_env();
  int limit(FamilyKind kind) const { return kind == FamilyKind::perm ? perm : paired; }
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(Family family, int cap);
  Family family;
  int cap;
};

/// Calls `visit` once per member, in lexicographic order of the word.
/// Throws CapExceeded if the size is over the cap and std::invalid_argument
/// for an odd size of a paired family.
void for_each_member(Family family, const std::function<void(const Permutation&)>& visit,
                     const Caps& caps = Caps::from_env());
std::vector<Permutation> enumerate(Family family, const Caps& caps = Caps::from_env());
/// Membership test by definition (used as the brute-force filter).
bool is_member(FamilyKind kind, const Permutation& p);

// ---------------------------------------------------------------- weights

/// Which indices an indexed rule applies to.
enum class Selector { cval, cpeak, cdrise, cdfall, fix, evenfix, oddfix };

/// Subscripts taken from the index-refined data: (cross, nest) at
/// excedances/anti-excedances, (psnest) at fixed points.
enum class SubscriptSource { crossnest, psnest };

/// Each selected index contributes family[subscripts].
struct IndexedRule {
  Selector selector;
  std::string family;
  SubscriptSource source;
};

/// Contributes family^(value of stat).
struct CountRule {
  Stat stat;
  std::string family;
};

/// A weight: product of rule contributions times lambda^cyc.
struct WeightScheme {
  std::string name;
  /// Family of permutations the scheme is defined on.
  FamilyKind family;
  std::vector<IndexedRule> indexed;
  std::vector<CountRule> counts;
};

const std::vector<WeightScheme>& builtin_schemes();
/// Throws std::invalid_argument naming the available schemes.
const WeightScheme& scheme(std::string_view name);

/// Weight without the lambda factor, as (variable, exponent) factors.
std::vector<Monomial::Factor> weight_factors(const WeightScheme& s, const Permutation& p,
                                             const std::vector<IndexData>& data, const StatProfile& prof);
/// Full weight including lambda^cyc.
Monomial weight(const WeightScheme& s, const Permutation& p);

Polynomial generating_polynomial(Family family, const WeightScheme& s, const Caps& caps = Caps::from_env());

/// lambda fixed to +1 or -1, or kept as the indeterminate `lambda`.
enum class LambdaValue { plus_one, minus_one, symbolic };

std::optional<LambdaValue> lambda_from_text(std::string_view text);
std::string_view to_string(LambdaValue l);

/// sum_n t^n * (sum over the family at size_at_order(kind, n) of weights),
/// through t^N, with lambda set as requested and then `substitution` applied
/// to every coefficient (nullptr means none; unmapped variables are kept).
TruncatedSeries<Polynomial> series_of_family(FamilyKind kind, const WeightScheme& s, LambdaValue lambda, int N,
                                             const VarMap& substitution = nullptr,
                                             const Caps& caps = Caps::from_env());

/// The same series reduced mod 2^61-1, once per assignment, all in a single
/// enumeration pass. lambda must be +1 or -1, or else covered by the
/// assignments.
std::vector<TruncatedSeries<Mod61>> modular_series_of_family(FamilyKind kind, const WeightScheme& s,
                                                             LambdaValue lambda, int N,
                                                             const std::vector<ResidueMap>& assignments,
                                                             const Caps& caps = Caps::from_env());

// ---------------------------------------------------------------- specializations

/// Master permutation variables to the p,q polynomial variables:
/// a[l,l'] -> pp1^l qp1^l' (y1 | v1), b -> pm1,qm1,(x1 | u1),
/// c -> pm2,qm2,(x2 | u2), d -> pp2,qp2,(y2 | v2), e[l] -> s^l w[l];
/// the y/x choice is taken when l' = 0.
VarMap perm_pq_specialization();
/// Master D-permutation variables: a,b,c,d as for permutations,
/// e[0] -> ze, e[l] -> se^l we, f[0] -> zo, f[l] -> so^l wo.
VarMap dperm_pq_specialization();
/// Master cycle-alternating variables to the even/odd p,q variables;
/// the variant depends on the parity of l + l'.
VarMap cyclealt_pq_specialization();
/// All p, q, s variables to 1 (perm, dperm and cyclealt p,q schemes).
VarMap pq_to_simple();
/// Simple D-permutation variables to the x,y scheme.
VarMap simple_dperm_to_xy();
/// Every variable except lambda to `value`.
VarMap all_variables(const Polynomial& value);

}  // namespace cyclefrac

#endif  // CYCLEFRAC_FAMILIES_HPP
