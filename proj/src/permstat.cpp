#include "cyclefrac/permstat.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace cyclefrac {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : word_) {
    if (v < 1 || v > n) {
      throw std::invalid_argument("not a permutation: value " + std::to_string(v) + " outside [1," +
                                  std::to_string(n) + "]");
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation: duplicate value " + std::to_string(v));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw std::invalid_argument("negative permutation size");
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(w));
}

Permutation Permutation::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  std::vector<int> word;
  if (text.empty()) return Permutation();
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto token = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    int value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw std::invalid_argument("not a permutation: bad token '" + std::string(token) + "'");
    }
    word.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Permutation(std::move(word));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(word_[i]);
  }
  return out;
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<bool> seen(word_.size() + 1, false);
  for (int start = 1; start <= size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    out += '(';
    int i = start;
    bool first = true;
    while (!seen[static_cast<std::size_t>(i)]) {
      seen[static_cast<std::size_t>(i)] = true;
      if (!first) out += ',';
      first = false;
      out += std::to_string(i);
      i = (*this)(i);
    }
    out += ')';
  }
  return out;
}

Permutation inverse(const Permutation& p) {
  std::vector<int> w(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) w[static_cast<std::size_t>(p(i) - 1)] = i;
  return Permutation(std::move(w));
}

int cycle_count(const Permutation& p) {
  std::vector<bool> seen(static_cast<std::size_t>(p.size()) + 1, false);
  int cycles = 0;
  for (int start = 1; start <= p.size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++cycles;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = p(i)) seen[static_cast<std::size_t>(i)] = true;
  }
  return cycles;
}

long long inversions(const Permutation& p) {
  long long count = 0;
  for (int i = 1; i <= p.size(); ++i) {
    for (int j = i + 1; j <= p.size(); ++j) {
      if (p(i) > p(j)) ++count;
    }
  }
  return count;
}

// ---------------------------------------------------------------- classifications

std::string_view to_string(CycleClass c) {
  switch (c) {
    case CycleClass::cpeak: return "cpeak";
    case CycleClass::cval: return "cval";
    case CycleClass::cdrise: return "cdrise";
    case CycleClass::cdfall: return "cdfall";
    case CycleClass::fix: return "fix";
  }
  return "?";
}

std::string_view to_string(RecordClass c) {
  switch (c) {
    case RecordClass::erec: return "erec";
    case RecordClass::earec: return "earec";
    case RecordClass::rar: return "rar";
    case RecordClass::nrar: return "nrar";
  }
  return "?";
}

std::string_view to_string(RecordCycleClass c) {
  switch (c) {
    case RecordCycleClass::ereccval: return "ereccval";
    case RecordCycleClass::ereccdrise: return "ereccdrise";
    case RecordCycleClass::eareccpeak: return "eareccpeak";
    case RecordCycleClass::eareccdfall: return "eareccdfall";
    case RecordCycleClass::rar: return "rar";
    case RecordCycleClass::nrcpeak: return "nrcpeak";
    case RecordCycleClass::nrcval: return "nrcval";
    case RecordCycleClass::nrcdrise: return "nrcdrise";
    case RecordCycleClass::nrcdfall: return "nrcdfall";
    case RecordCycleClass::nrfix: return "nrfix";
  }
  return "?";
}

namespace {

void check_index(const Permutation& p, int i) {
  if (i < 1 || i > p.size()) {
    throw std::out_of_range("index " + std::to_string(i) + " outside [1," + std::to_string(p.size()) + "]");
  }
}

CycleClass cycle_class_of(int pre, int i, int post) {
  if (post == i) return CycleClass::fix;
  if (pre < i && post < i) return CycleClass::cpeak;
  if (pre > i && post > i) return CycleClass::cval;
  if (pre < i) return CycleClass::cdrise;
  return CycleClass::cdfall;
}

RecordCycleClass combine(CycleClass cycle, RecordClass record) {
  switch (record) {
    case RecordClass::rar:
      return RecordCycleClass::rar;
    case RecordClass::erec:
      if (cycle == CycleClass::cval) return RecordCycleClass::ereccval;
      if (cycle == CycleClass::cdrise) return RecordCycleClass::ereccdrise;
      break;
    case RecordClass::earec:
      if (cycle == CycleClass::cpeak) return RecordCycleClass::eareccpeak;
      if (cycle == CycleClass::cdfall) return RecordCycleClass::eareccdfall;
      break;
    case RecordClass::nrar:
      switch (cycle) {
        case CycleClass::cpeak: return RecordCycleClass::nrcpeak;
        case CycleClass::cval: return RecordCycleClass::nrcval;
        case CycleClass::cdrise: return RecordCycleClass::nrcdrise;
        case CycleClass::cdfall: return RecordCycleClass::nrcdfall;
        case CycleClass::fix: return RecordCycleClass::nrfix;
      }
      break;
  }
  // Unreachable for a genuine permutation: exclusive records are excedances
  // and exclusive antirecords are anti-excedances.
  throw std::logic_error("inconsistent record/cycle classification");
}

IndexRefined refined_at(const std::vector<int>& w, int j) {
  // w is the one-line word with w[0] unused, so w[i] = sigma(i).
  const int n = static_cast<int>(w.size()) - 1;
  IndexRefined r;
  const int image = w[static_cast<std::size_t>(j)];
  if (image > j) {
    // i < j < k < l with l = sigma(j); k = sigma(i) (crossing) or l = sigma(i), k = sigma(j) (nesting).
    for (int i = 1; i < j; ++i) {
      const int wi = w[static_cast<std::size_t>(i)];
      if (wi > j && wi < image) ++r.ucross;
      if (wi > image) ++r.unest;
    }
  } else if (image < j) {
    // i < j < k < l with i = sigma(k), k the distinguished index; j = sigma(l) (crossing)
    // or i = sigma(l), j = sigma(k) (nesting).
    for (int l = j + 1; l <= n; ++l) {
      const int wl = w[static_cast<std::size_t>(l)];
      if (wl > image && wl < j) ++r.lcross;
      if (wl < image) ++r.lnest;
    }
  } else {
    for (int i = 1; i < j; ++i) {
      if (w[static_cast<std::size_t>(i)] > j) ++r.psnest;
    }
  }
  return r;
}

std::vector<int> padded_word(const Permutation& p) {
  std::vector<int> w(static_cast<std::size_t>(p.size()) + 1, 0);
  std::copy(p.word().begin(), p.word().end(), w.begin() + 1);
  return w;
}

}  // namespace

CycleClass classify_cycle(const Permutation& p, int i) {
  check_index(p, i);
  int pre = 0;
  for (int j = 1; j <= p.size(); ++j) {
    if (p(j) == i) pre = j;
  }
  return cycle_class_of(pre, i, p(i));
}

RecordClass classify_record(const Permutation& p, int i) {
  check_index(p, i);
  bool record = true;
  bool antirecord = true;
  for (int j = 1; j < i; ++j) record = record && p(j) < p(i);
  for (int j = i + 1; j <= p.size(); ++j) antirecord = antirecord && p(j) > p(i);
  if (record && antirecord) return RecordClass::rar;
  if (record) return RecordClass::erec;
  if (antirecord) return RecordClass::earec;
  return RecordClass::nrar;
}

RecordCycleClass record_cycle_category(const Permutation& p, int i) {
  return combine(classify_cycle(p, i), classify_record(p, i));
}

IndexRefined index_refined(const Permutation& p, int i) {
  check_index(p, i);
  return refined_at(padded_word(p), i);
}

std::vector<IndexData> analyze(const Permutation& p) {
  const int n = p.size();
  const auto w = padded_word(p);
  std::vector<int> pre(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) pre[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])] = i;

  std::vector<bool> antirecord(static_cast<std::size_t>(n) + 1, false);
  int running_min = n + 1;
  for (int i = n; i >= 1; --i) {
    const int wi = w[static_cast<std::size_t>(i)];
    antirecord[static_cast<std::size_t>(i)] = wi < running_min;
    running_min = std::min(running_min, wi);
  }

  std::vector<IndexData> out;
  out.reserve(static_cast<std::size_t>(n));
  int running_max = 0;
  for (int i = 1; i <= n; ++i) {
    const int wi = w[static_cast<std::size_t>(i)];
    const bool record = wi > running_max;
    running_max = std::max(running_max, wi);
    const bool arec = antirecord[static_cast<std::size_t>(i)];
    RecordClass rc = record && arec ? RecordClass::rar
                     : record       ? RecordClass::erec
                     : arec         ? RecordClass::earec
                                    : RecordClass::nrar;
    CycleClass cc = cycle_class_of(pre[static_cast<std::size_t>(i)], i, wi);
    out.push_back(IndexData{cc, rc, combine(cc, rc), refined_at(w, i)});
  }
  return out;
}

// ---------------------------------------------------------------- profile

std::string_view stat_name(Stat s) {
  static constexpr std::string_view names[] = {
#define CYCLEFRAC_STAT_NAME(name) #name,
      CYCLEFRAC_STATS(CYCLEFRAC_STAT_NAME)
#undef CYCLEFRAC_STAT_NAME
  };
  return names[static_cast<std::size_t>(s)];
}

const std::array<Stat, kStatCount>& all_stats() {
  static const auto stats = [] {
    std::array<Stat, kStatCount> a{};
    for (std::size_t i = 0; i < kStatCount; ++i) a[i] = static_cast<Stat>(i);
    return a;
  }();
  return stats;
}

std::optional<Stat> stat_from_name(std::string_view name) {
  for (Stat s : all_stats()) {
    if (stat_name(s) == name) return s;
  }
  return std::nullopt;
}

StatProfile profile(const Permutation& p) { return profile(p, analyze(p)); }

StatProfile profile(const Permutation& p, const std::vector<IndexData>& data) {
  StatProfile prof;
  prof.n = p.size();
  auto bump = [&prof](Stat s, long long by = 1) { prof[s] += by; };
  prof[Stat::cyc] = cycle_count(p);
  prof[Stat::inv] = inversions(p);
  for (int i = 1; i <= p.size(); ++i) {
    const auto& d = data[static_cast<std::size_t>(i - 1)];
    const bool even = i % 2 == 0;
    const auto& r = d.refined;
    switch (d.cycle) {
      case CycleClass::cpeak:
        bump(Stat::cpeak);
        bump(Stat::aexc);
        bump(Stat::lcrosscpeak, r.lcross);
        bump(Stat::lnestcpeak, r.lnest);
        bump(even ? Stat::lcrosscpeakeven : Stat::lcrosscpeakodd, r.lcross);
        bump(even ? Stat::lnestcpeakeven : Stat::lnestcpeakodd, r.lnest);
        break;
      case CycleClass::cdfall:
        bump(Stat::cdfall);
        bump(Stat::aexc);
        bump(Stat::lcrosscdfall, r.lcross);
        bump(Stat::lnestcdfall, r.lnest);
        break;
      case CycleClass::cval:
        bump(Stat::cval);
        bump(Stat::exc);
        bump(Stat::ucrosscval, r.ucross);
        bump(Stat::unestcval, r.unest);
        bump(even ? Stat::ucrosscvaleven : Stat::ucrosscvalodd, r.ucross);
        bump(even ? Stat::unestcvaleven : Stat::unestcvalodd, r.unest);
        break;
      case CycleClass::cdrise:
        bump(Stat::cdrise);
        bump(Stat::exc);
        bump(Stat::ucrosscdrise, r.ucross);
        bump(Stat::unestcdrise, r.unest);
        break;
      case CycleClass::fix:
        bump(Stat::fix);
        bump(even ? Stat::evenfix : Stat::oddfix);
        bump(even ? Stat::epsnest : Stat::opsnest, r.psnest);
        break;
    }
    switch (d.record) {
      case RecordClass::erec: bump(Stat::rec); bump(Stat::erec); break;
      case RecordClass::earec: bump(Stat::arec); bump(Stat::earec); break;
      case RecordClass::rar: bump(Stat::rec); bump(Stat::arec); bump(Stat::rar); break;
      case RecordClass::nrar: bump(Stat::nrar); break;
    }
    switch (d.category) {
      case RecordCycleClass::ereccval:
        bump(Stat::ereccval);
        bump(even ? Stat::ereccvaleven : Stat::ereccvalodd);
        break;
      case RecordCycleClass::ereccdrise: bump(Stat::ereccdrise); break;
      case RecordCycleClass::eareccpeak:
        bump(Stat::eareccpeak);
        bump(even ? Stat::eareccpeakeven : Stat::eareccpeakodd);
        break;
      case RecordCycleClass::eareccdfall: bump(Stat::eareccdfall); break;
      case RecordCycleClass::rar: bump(even ? Stat::evenrar : Stat::oddrar); break;
      case RecordCycleClass::nrcpeak:
        bump(Stat::nrcpeak);
        bump(even ? Stat::nrcpeakeven : Stat::nrcpeakodd);
        break;
      case RecordCycleClass::nrcval:
        bump(Stat::nrcval);
        bump(even ? Stat::nrcvaleven : Stat::nrcvalodd);
        break;
      case RecordCycleClass::nrcdrise: bump(Stat::nrcdrise); break;
      case RecordCycleClass::nrcdfall: bump(Stat::nrcdfall); break;
      case RecordCycleClass::nrfix:
        bump(Stat::nrfix);
        bump(even ? Stat::evennrfix : Stat::oddnrfix);
        break;
    }
    bump(Stat::ucross, r.ucross);
    bump(Stat::unest, r.unest);
    bump(Stat::lcross, r.lcross);
    bump(Stat::lnest, r.lnest);
    bump(Stat::psnest, r.psnest);
  }
  return prof;
}

bool check_inv_formula(const Permutation& p) {
  const auto s = profile(p);
  const long long rhs = s[Stat::cval] + s[Stat::cdrise] + s[Stat::cdfall] + s[Stat::ucross] + s[Stat::lcross] +
                        2 * (s[Stat::unest] + s[Stat::lnest] + s[Stat::psnest]);
  return s[Stat::inv] == rhs;
}

bool check_lemma_1_1(const Permutation& p) {
  const auto s = profile(p);
  const long long crossings = s[Stat::ucross] + s[Stat::lcross];
  const auto parity = [](long long x) { return x % 2; };
  return parity(s[Stat::cyc]) == parity(s[Stat::fix] + s[Stat::cpeak] + crossings) &&
         parity(s[Stat::cyc]) == parity(s[Stat::fix] + s[Stat::cval] + crossings);
}

bool is_cycle_alternating(const Permutation& p) {
  for (int i = 1; i <= p.size(); ++i) {
    auto c = classify_cycle(p, i);
    if (c != CycleClass::cpeak && c != CycleClass::cval) return false;
  }
  return true;
}

bool is_d_permutation(const Permutation& p) {
  if (p.size() % 2 != 0) return false;
  for (int i = 1; i <= p.size(); ++i) {
    if (i % 2 == 1 ? p(i) < i : p(i) > i) return false;
  }
  return true;
}

bool check_lemma_4_2(const Permutation& p) {
  const auto data = analyze(p);
  for (int i = 1; i <= p.size(); ++i) {
    const auto& d = data[static_cast<std::size_t>(i - 1)];
    if (d.cycle != CycleClass::cpeak && d.cycle != CycleClass::cval) {
      throw std::invalid_argument("not cycle-alternating: index " + std::to_string(i) + " is " +
                                  std::string(to_string(d.cycle)));
    }
  }
  for (int i = 1; i <= p.size(); ++i) {
    const auto& d = data[static_cast<std::size_t>(i - 1)];
    if (d.cycle == CycleClass::cval && (d.refined.ucross + d.refined.unest) % 2 != (i - 1) % 2) return false;
    if (d.cycle == CycleClass::cpeak && (d.refined.lcross + d.refined.lnest) % 2 != i % 2) return false;
  }
  return true;
}

}  // namespace cyclefrac
