#ifndef CYCLEFRAC_PERMSTAT_HPP
#define CYCLEFRAC_PERMSTAT_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclefrac {

/// A permutation of [n] in one-line notation. All public indexing is
/// 1-based: `p(i)` is the image of i. n = 0 is the empty permutation.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `word` is a bijection of [n].
  explicit Permutation(std::vector<int> word);

  static Permutation identity(int n);
  /// Comma-separated one-line word, e.g. "9,3,7,4". Empty text is the empty
  /// permutation. Errors name the offending token.
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(word_.size()); }
  int operator()(int i) const { return word_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& word() const { return word_; }

  std::string to_string() const;
  /// Cycles in parentheses, each starting at its smallest element, sorted
  /// by that element: "(1,9,10)(2,3,7)(4)".
  std::string cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> word_;
};

Permutation inverse(const Permutation& p);
int cycle_count(const Permutation& p);
long long inversions(const Permutation& p);

enum class CycleClass : std::uint8_t { cpeak, cval, cdrise, cdfall, fix };
enum class RecordClass : std::uint8_t { erec, earec, rar, nrar };
enum class RecordCycleClass : std::uint8_t {
  ereccval,
  ereccdrise,
  eareccpeak,
  eareccdfall,
  rar,
  nrcpeak,
  nrcval,
  nrcdrise,
  nrcdfall,
  nrfix,
};

std::string_view to_string(CycleClass c);
std::string_view to_string(RecordClass c);
std::string_view to_string(RecordCycleClass c);

/// Throw std::out_of_range unless 1 <= i <= n.
CycleClass classify_cycle(const Permutation& p, int i);
RecordClass classify_record(const Permutation& p, int i);
RecordCycleClass record_cycle_category(const Permutation& p, int i);

/// Crossings and nestings attributed to one index. ucross/unest count
/// quadruplets with the index in second position (nonzero only at
/// excedances), lcross/lnest with it in third position (only at
/// anti-excedances); psnest is the level of a fixed point.
struct IndexRefined {
  int ucross = 0;
  int unest = 0;
  int lcross = 0;
  int lnest = 0;
  int psnest = 0;
  friend bool operator==(const IndexRefined&, const IndexRefined&) = default;
};

IndexRefined index_refined(const Permutation& p, int i);

/// Everything known about one index.
struct IndexData {
  CycleClass cycle;
  RecordClass record;
  RecordCycleClass category;
  IndexRefined refined;
};

/// Per-index data for i = 1..n (element i-1 describes index i).
std::vector<IndexData> analyze(const Permutation& p);

#define CYCLEFRAC_STATS(X)                                                                      \
  X(cyc) X(fix) X(cpeak) X(cval) X(cdrise) X(cdfall) X(exc) X(aexc)                            \
  X(rec) X(arec) X(erec) X(earec) X(rar) X(nrar)                                               \
  X(ereccval) X(ereccdrise) X(eareccpeak) X(eareccdfall)                                       \
  X(nrcpeak) X(nrcval) X(nrcdrise) X(nrcdfall) X(nrfix)                                        \
  X(evenfix) X(oddfix) X(evenrar) X(oddrar) X(evennrfix) X(oddnrfix)                           \
  X(eareccpeakeven) X(eareccpeakodd) X(ereccvaleven) X(ereccvalodd)                            \
  X(nrcpeakeven) X(nrcpeakodd) X(nrcvaleven) X(nrcvalodd)                                      \
  X(ucross) X(lcross) X(unest) X(lnest) X(psnest) X(epsnest) X(opsnest)                        \
  X(ucrosscval) X(ucrosscdrise) X(lcrosscpeak) X(lcrosscdfall)                                 \
  X(unestcval) X(unestcdrise) X(lnestcpeak) X(lnestcdfall)                                     \
  X(lcrosscpeakeven) X(lcrosscpeakodd) X(ucrosscvaleven) X(ucrosscvalodd)                      \
  X(lnestcpeakeven) X(lnestcpeakodd) X(unestcvaleven) X(unestcvalodd)                          \
  X(inv)

/// Every aggregate statistic. "even"/"odd" refer to the parity of the index.
enum class Stat : std::uint8_t {
#define CYCLEFRAC_STAT_ENUM(name) name,
  CYCLEFRAC_STATS(CYCLEFRAC_STAT_ENUM)
#undef CYCLEFRAC_STAT_ENUM
};

inline constexpr std::size_t kStatCount = 0
#define CYCLEFRAC_STAT_COUNT(name) +1
    CYCLEFRAC_STATS(CYCLEFRAC_STAT_COUNT)
#undef CYCLEFRAC_STAT_COUNT
    ;

std::string_view stat_name(Stat s);
std::optional<Stat> stat_from_name(std::string_view name);
const std::array<Stat, kStatCount>& all_stats();

struct StatProfile {
  int n = 0;
  std::array<long long, kStatCount> counts{};

  long long operator[](Stat s) const { return counts[static_cast<std::size_t>(s)]; }
  long long& operator[](Stat s) { return counts[static_cast<std::size_t>(s)]; }
};

StatProfile profile(const Permutation& p);
/// Aggregates an existing analysis (cyc and inv still need the permutation).
StatProfile profile(const Permutation& p, const std::vector<IndexData>& data);

/// inv = cval + cdrise + cdfall + ucross + lcross + 2(unest + lnest + psnest), exactly.
bool check_inv_formula(const Permutation& p);
/// cyc = fix + cpeak + ucross + lcross = fix + cval + ucross + lcross (mod 2).
bool check_lemma_1_1(const Permutation& p);

bool is_cycle_alternating(const Permutation& p);
bool is_d_permutation(const Permutation& p);

/// Parity law for cycle-alternating permutations: at a cycle valley i,
/// ucross_i + unest_i = i - 1 (mod 2); at a cycle peak, lcross_i + lnest_i = i
/// (mod 2). Throws std::invalid_argument if p is not cycle-alternating.
bool check_lemma_4_2(const Permutation& p);

}  // namespace cyclefrac

#endif  // CYCLEFRAC_PERMSTAT_HPP
