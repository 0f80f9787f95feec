#ifndef CYCLEFRAC_CFKIT_HPP
#define CYCLEFRAC_CFKIT_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclefrac/modint.hpp"
#include "cyclefrac/polyring.hpp"

namespace cyclefrac {

/// c_0 + c_1 t + ... + c_N t^N, everything beyond t^N discarded.
/// R is Polynomial or Mod61 (anything with 0, 1, +, -, * and ==).
template <class R>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order, R c0 = R(0)) : coeffs_(check_order(order), R(0)) {
    coeffs_[0] = std::move(c0);
  }
  TruncatedSeries(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {  // NOLINT
    if (coeffs_.empty()) throw std::invalid_argument("a truncated series needs at least one coefficient");
  }

  static TruncatedSeries one(int order) { return TruncatedSeries(order, R(1)); }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const R& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  R& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<R>& coeffs() const { return coeffs_; }

  /// Drops everything above t^m; m must not exceed the current order.
  TruncatedSeries truncated(int m) const {
    if (m < 0 || m > order()) throw std::invalid_argument("cannot truncate to order " + std::to_string(m));
    return TruncatedSeries(std::vector<R>(coeffs_.begin(), coeffs_.begin() + m + 1));
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.same_order(b);
    const int n = a.order();
    TruncatedSeries out(n);
    for (int i = 0; i <= n; ++i) {
      if (a[i] == R(0)) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (b[j] == R(0)) continue;
        out[i + j] += a[i] * b[j];
      }
    }
    return out;
  }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  static std::size_t check_order(int order) {
    if (order < 0) throw std::invalid_argument("negative series order");
    return static_cast<std::size_t>(order) + 1;
  }
  void same_order(const TruncatedSeries& o) const {
    if (o.order() != order()) {
      throw std::invalid_argument("series orders differ: " + std::to_string(order()) + " vs " +
                                  std::to_string(o.order()));
    }
  }

  std::vector<R> coeffs_;
};

template <class R>
TruncatedSeries<R> series_add(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  return a + b;
}

template <class R>
TruncatedSeries<R> series_mul(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  return a * b;
}

/// 1/a for a with constant term exactly 1; std::domain_error otherwise.
template <class R>
TruncatedSeries<R> series_reciprocal(const TruncatedSeries<R>& a) {
  if (!(a[0] == R(1))) throw std::domain_error("series reciprocal needs constant term 1");
  const int n = a.order();
  TruncatedSeries<R> b(n, R(1));
  for (int k = 1; k <= n; ++k) {
    R acc(0);
    for (int j = 1; j <= k; ++j) {
      if (a[j] == R(0) || b[k - j] == R(0)) continue;
      acc += a[j] * b[k - j];
    }
    b[k] = -acc;
  }
  return b;
}

enum class FractionKind { S, T, J };

/// Level-indexed coefficient generators of a continued fraction:
///   S: 1/(1 - a1 t/(1 - a2 t/(1 - ...)))
///   T: 1/(1 - d1 t - a1 t/(1 - d2 t - a2 t/(1 - ...)))
///   J: 1/(1 - g0 t - b1 t^2/(1 - g1 t - b2 t^2/(1 - ...)))
/// alpha/delta/beta are consulted from level 1, gamma from level 0.
template <class R>
struct FractionSpec {
  using Generator = std::function<R(int)>;

  FractionKind kind = FractionKind::S;
  Generator alpha;
  Generator delta;
  Generator gamma;
  Generator beta;

  static FractionSpec S(Generator alpha) { return {FractionKind::S, std::move(alpha), {}, {}, {}}; }
  static FractionSpec T(Generator alpha, Generator delta) {
    return {FractionKind::T, std::move(alpha), std::move(delta), {}, {}};
  }
  static FractionSpec J(Generator gamma, Generator beta) {
    return {FractionKind::J, {}, {}, std::move(gamma), std::move(beta)};
  }
};

namespace detail {

// 1 - c1 t - c2 t^2 * tail, truncated at order m (tail has order m - shift).
template <class R>
TruncatedSeries<R> level_step(int m, const R& linear, const R& tail_coeff, int shift,
                              const TruncatedSeries<R>& tail) {
  TruncatedSeries<R> den(m, R(1));
  if (m >= 1) den[1] -= linear;
  if (!(tail_coeff == R(0))) {
    for (int k = shift; k <= m; ++k) {
      if (!(tail[k - shift] == R(0))) den[k] -= tail_coeff * tail[k - shift];
    }
  }
  return series_reciprocal(den);
}

}  // namespace detail

/// Expands the fraction through t^N, evaluating bottom-up from level
/// `depth` (default N + 1) with the innermost tail set to 1. Levels too deep
/// to influence t^0..t^N are not evaluated, so their generators are never
/// called.
template <class R>
TruncatedSeries<R> expand(const FractionSpec<R>& spec, int N, int depth = -1) {
  if (N < 0) throw std::invalid_argument("negative expansion order");
  if (depth < 0) depth = N + 1;
  auto require = [](const typename FractionSpec<R>::Generator& g, const char* name) {
    if (!g) throw std::invalid_argument(std::string("fraction has no ") + name + " generator");
  };
  TruncatedSeries<R> s = TruncatedSeries<R>::one(N);
  if (spec.kind == FractionKind::J) {
    require(spec.gamma, "gamma");
    require(spec.beta, "beta");
    // The tail below level k is multiplied by t^2, so level k is needed to order N - 2k.
    for (int k = depth - 1; k >= 0; --k) {
      const int m = N - 2 * k;
      if (m < 0) continue;
      const TruncatedSeries<R> tail = m >= 2 ? s.truncated(m - 2) : TruncatedSeries<R>::one(0);
      s = detail::level_step(m, spec.gamma(k), m >= 2 ? spec.beta(k + 1) : R(0), 2, tail);
    }
    return s;
  }
  require(spec.alpha, "alpha");
  if (spec.kind == FractionKind::T) require(spec.delta, "delta");
  for (int k = depth; k >= 1; --k) {
    const int m = N - (k - 1);
    if (m < 0) continue;
    const R lin = spec.kind == FractionKind::T && m >= 1 ? spec.delta(k) : R(0);
    const TruncatedSeries<R> tail = m >= 1 ? s.truncated(m - 1) : TruncatedSeries<R>::one(0);
    s = detail::level_step(m, lin, m >= 1 ? spec.alpha(k) : R(0), 1, tail);
  }
  return s;
}

/// Even contraction of a T-fraction whose delta vanishes from level 2 on:
/// g0 = d1 + a1, gn = a(2n) + a(2n+1), bn = a(2n-1) a(2n). A nonzero delta
/// at a level >= 2 surfaces as std::invalid_argument when a generator that
/// depends on that level is called.
template <class R>
FractionSpec<R> contract_even(const FractionSpec<R>& t) {
  if (t.kind != FractionKind::T) throw std::invalid_argument("even contraction needs a T-fraction");
  auto alpha = t.alpha;
  auto delta = t.delta;
  auto check = [delta](int level) {
    if (level >= 2 && !(delta(level) == R(0))) {
      throw std::invalid_argument("even contraction needs delta = 0 at level " + std::to_string(level));
    }
  };
  auto gamma = [alpha, delta, check](int n) -> R {
    if (n == 0) return delta(1) + alpha(1);
    check(2 * n);
    check(2 * n + 1);
    return alpha(2 * n) + alpha(2 * n + 1);
  };
  auto beta = [alpha, check](int n) -> R {
    check(2 * n - 1);
    check(2 * n);
    return alpha(2 * n - 1) * alpha(2 * n);
  };
  return FractionSpec<R>::J(gamma, beta);
}

inline std::string coefficient_text(const Polynomial& p) { return p.to_string(); }
inline std::string coefficient_text(const Mod61& m) { return m.to_string(); }

/// "c0; c1; c2; ..." with canonical coefficient text.
template <class R>
std::string to_string(const TruncatedSeries<R>& s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    if (k > 0) out += "; ";
    out += coefficient_text(s[k]);
  }
  return out;
}

/// Coefficient-wise image under a ring map.
template <class R, class F>
auto map_series(const TruncatedSeries<R>& s, F&& f) {
  using Out = decltype(f(s[0]));
  std::vector<Out> out;
  out.reserve(s.coeffs().size());
  for (const auto& c : s.coeffs()) out.push_back(f(c));
  return TruncatedSeries<Out>(std::move(out));
}

}  // namespace cyclefrac

#endif  // CYCLEFRAC_CFKIT_HPP
