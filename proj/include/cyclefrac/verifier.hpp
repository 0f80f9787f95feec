#ifndef CYCLEFRAC_VERIFIER_HPP
#define CYCLEFRAC_VERIFIER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cyclefrac/cfkit.hpp"
#include "cyclefrac/families.hpp"
#include "cyclefrac/polyring.hpp"

namespace cyclefrac {

enum class VerifyMode { symbolic, modular, predicate };

std::string_view to_string(VerifyMode m);
std::optional<VerifyMode> verify_mode_from_name(std::string_view name);

/// One registered identity: either "enumeration series = continued fraction"
/// or a per-permutation predicate over a family.
struct IdentityCase {
  std::string id;
  std::string title;
  bool is_predicate = false;

  // Series identities.
  FamilyKind family = FamilyKind::perm;
  std::string scheme;
  LambdaValue lambda = LambdaValue::minus_one;
  std::function<FractionSpec<Polynomial>()> fraction;
  int max_symbolic = 0;
  int max_modular = 0;

  // Predicate identities: checked on every member of sizes
  // size_at_order(family, 1..order).
  std::function<bool(const Permutation&)> predicate;
  int max_predicate = 0;
};

class UnknownIdentity : public std::invalid_argument {
 public:
  explicit UnknownIdentity(std::string_view id);
};

const std::vector<IdentityCase>& identities();
const IdentityCase& identity(std::string_view id);

TruncatedSeries<Polynomial> cf_side(std::string_view id, int N);
TruncatedSeries<Polynomial> enum_side(std::string_view id, int N, const Caps& caps = Caps::from_env());

/// Deterministic pseudo-random residues mod 2^61-1, a function of
/// (seed, trial, variable name) only.
ResidueMap random_assignment(std::uint64_t seed, int trial);

struct VerifyOptions {
  /// Highest order checked; -1 picks the identity's default for the mode.
  int order = -1;
  /// nullopt: symbolic for series identities, predicate for predicates.
  std::optional<VerifyMode> mode;
  std::uint64_t seed = 1;
  int trials = 3;
  std::optional<Caps> caps;
};

struct OrderResult {
  int order = 0;
  bool pass = false;
  /// Permutations enumerated at this order.
  long long checked = 0;
};

/// First disagreement. For series: the t-power, both coefficients (and, in
/// modular mode, the trial). For predicates: the smallest failing
/// permutation.
struct Witness {
  int order = 0;
  std::string enumeration;
  std::string fraction;
  std::string difference;
  std::optional<int> trial;
  std::string permutation;
};

struct VerifyReport {
  std::string id;
  VerifyMode mode = VerifyMode::symbolic;
  std::vector<OrderResult> orders;
  bool pass = false;
  std::optional<Witness> witness;
  double millis = 0;

  long long checked() const;
  nlohmann::json to_json() const;
};

/// Throws UnknownIdentity, CapExceeded, or std::invalid_argument for a mode
/// that does not apply to the identity.
VerifyReport verify(std::string_view id, const VerifyOptions& options = {});

/// Fixed-width table, one row per report.
std::string report_table(const std::vector<VerifyReport>& reports);

}  // namespace cyclefrac

#endif  // CYCLEFRAC_VERIFIER_HPP
