#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "hdens/error.hpp"

namespace hdens {

/// Exact value numerator / 2^exponent, kept canonical: the numerator is odd,
/// or it is zero and the exponent is 0.
class dyadic {
 public:
  dyadic() = default;
  dyadic(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  dyadic(mpz_class numerator, std::uint64_t exponent) : num_(std::move(numerator)), exp_(exponent) { canonicalize(); }

  /// 2^-e
  static dyadic pow2_neg(std::uint64_t e) { return dyadic(mpz_class(1), e); }

  /// Throws out_of_range unless q is a power of two.
  static dyadic from_rational(const mpq_class& q) {
    const mpz_class& den = q.get_den();
    const auto bits = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class check;
    mpz_ui_pow_ui(check.get_mpz_t(), 2, bits);
    if (check != den) throw error(errc::out_of_range, "not a dyadic rational: " + q.get_str());
    return dyadic(q.get_num(), bits);
  }

  const mpz_class& numerator() const noexcept { return num_; }
  std::uint64_t exponent() const noexcept { return exp_; }

  mpz_class denominator() const {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, exp_);
    return d;
  }

  mpq_class to_rational() const {
    mpq_class q(num_, denominator());
    q.canonicalize();
    return q;
  }

  double to_double() const { return to_rational().get_d(); }

  /// "p/q" with q = 2^e, or a bare integer when e = 0.
  std::string str() const {
    if (exp_ == 0) return num_.get_str();
    return num_.get_str() + "/" + denominator().get_str();
  }

  /// "p/2^e" form.
  std::string pow2_str() const {
    if (exp_ == 0) return num_.get_str();
    return num_.get_str() + "/2^" + std::to_string(exp_);
  }

  friend dyadic operator+(const dyadic& a, const dyadic& b) {
    auto [x, y, e] = aligned(a, b);
    return dyadic(x + y, e);
  }
  friend dyadic operator-(const dyadic& a, const dyadic& b) {
    auto [x, y, e] = aligned(a, b);
    return dyadic(x - y, e);
  }
  friend dyadic operator*(const dyadic& a, const dyadic& b) { return dyadic(a.num_ * b.num_, a.exp_ + b.exp_); }
  dyadic operator-() const { return dyadic(-num_, exp_); }
  dyadic& operator+=(const dyadic& o) { return *this = *this + o; }
  dyadic& operator-=(const dyadic& o) { return *this = *this - o; }
  dyadic& operator*=(const dyadic& o) { return *this = *this * o; }

  /// Exact division by 2^e.
  dyadic shifted_down(std::uint64_t e) const { return dyadic(num_, exp_ + e); }

  friend bool operator==(const dyadic& a, const dyadic& b) { return a.exp_ == b.exp_ && a.num_ == b.num_; }
  friend std::strong_ordering operator<=>(const dyadic& a, const dyadic& b) {
    auto [x, y, e] = aligned(a, b);
    const int c = cmp(x, y);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const dyadic& d) { return os << d.str(); }

 private:
  struct aligned_pair {
    mpz_class a, b;
    std::uint64_t exp;
  };

  static aligned_pair aligned(const dyadic& a, const dyadic& b) {
    aligned_pair r{a.num_, b.num_, std::max(a.exp_, b.exp_)};
    if (a.exp_ < r.exp) r.a <<= static_cast<mp_bitcnt_t>(r.exp - a.exp_);
    if (b.exp_ < r.exp) r.b <<= static_cast<mp_bitcnt_t>(r.exp - b.exp_);
    return r;
  }

  void canonicalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    const auto twos = mpz_scan1(num_.get_mpz_t(), 0);
    const auto drop = std::min<std::uint64_t>(twos, exp_);
    if (drop > 0) {
      num_ >>= static_cast<mp_bitcnt_t>(drop);
      exp_ -= drop;
    }
  }

  mpz_class num_ = 0;
  std::uint64_t exp_ = 0;
};

/// Closed interval with exact dyadic endpoints; the target lies inside.
struct interval_value {
  dyadic lower;
  dyadic upper;

  dyadic width() const { return upper - lower; }
  bool contains(const mpq_class& q) const { return lower.to_rational() <= q && q <= upper.to_rational(); }
};

}  // namespace hdens
