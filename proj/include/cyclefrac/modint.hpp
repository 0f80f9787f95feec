#ifndef CYCLEFRAC_MODINT_HPP
#define CYCLEFRAC_MODINT_HPP

#include <cstdint>
#include <string>

#include "cyclefrac/polyring.hpp"

namespace cyclefrac {

/// Residue modulo kDefaultPrime (2^61 - 1), usable as a coefficient ring
/// for TruncatedSeries.
class Mod61 {
 public:
  static constexpr std::uint64_t kPrime = kDefaultPrime;

  constexpr Mod61() = default;
  constexpr Mod61(int v)  // NOLINT: integer constants convert implicitly
      : v_(v >= 0 ? static_cast<std::uint64_t>(v) % kPrime
                  : kPrime - static_cast<std::uint64_t>(-static_cast<long long>(v)) % kPrime) {
    if (v_ == kPrime) v_ = 0;
  }
  static constexpr Mod61 from_residue(std::uint64_t r) {
    Mod61 m;
    m.v_ = r % kPrime;
    return m;
  }

  constexpr std::uint64_t value() const { return v_; }

  Mod61& operator+=(Mod61 o) {
    v_ += o.v_;
    if (v_ >= kPrime) v_ -= kPrime;
    return *this;
  }
  Mod61& operator-=(Mod61 o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + kPrime - o.v_;
    return *this;
  }
  Mod61& operator*=(Mod61 o) {
    unsigned __int128 prod = static_cast<unsigned __int128>(v_) * o.v_;
    // 2^61 = 1 mod p, so fold the high bits onto the low ones.
    std::uint64_t lo = static_cast<std::uint64_t>(prod) & kPrime;
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    v_ = lo + hi;
    if (v_ >= kPrime) v_ -= kPrime;
    return *this;
  }
  Mod61 operator-() const { return Mod61() - *this; }

  friend Mod61 operator+(Mod61 a, Mod61 b) { return a += b; }
  friend Mod61 operator-(Mod61 a, Mod61 b) { return a -= b; }
  friend Mod61 operator*(Mod61 a, Mod61 b) { return a *= b; }
  friend bool operator==(Mod61, Mod61) = default;

  Mod61 pow(std::uint64_t e) const {
    Mod61 result(1);
    Mod61 base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      base *= base;
      e >>= 1U;
    }
    return result;
  }

  std::string to_string() const { return std::to_string(v_); }

 private:
  std::uint64_t v_ = 0;
};

}  // namespace cyclefrac

#endif  // CYCLEFRAC_MODINT_HPP
