#pragma once

#include <cstddef>
#include <utility>

#include <gmpxx.h>

namespace hdens {

/// a + b sqrt(d) over the rationals, d a fixed non-square rational > 0.
class quadratic {
 public:
  quadratic(mpq_class a, mpq_class b, mpq_class d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& radical_part() const noexcept { return b_; }

  friend quadratic operator+(const quadratic& x, const quadratic& y) { return {x.a_ + y.a_, x.b_ + y.b_, x.d_}; }
  friend quadratic operator-(const quadratic& x, const quadratic& y) { return {x.a_ - y.a_, x.b_ - y.b_, x.d_}; }
  friend quadratic operator*(const quadratic& x, const quadratic& y) {
    return {x.a_ * y.a_ + x.b_ * y.b_ * x.d_, x.a_ * y.b_ + x.b_ * y.a_, x.d_};
  }
  /// Divisor must be nonzero.
  friend quadratic operator/(const quadratic& x, const quadratic& y) {
    const mpq_class norm = y.a_ * y.a_ - y.b_ * y.b_ * y.d_;
    return x * quadratic(y.a_ / norm, -y.b_ / norm, y.d_);
  }

  quadratic pow(std::size_t e) const {
    quadratic result(1, 0, d_), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

 private:
  mpq_class a_, b_, d_;
};

/// Exact rational square root when q is a square, else false.
inline bool rational_sqrt(const mpq_class& q, mpq_class& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = mpq_class(n, d);
  root.canonicalize();
  return true;
}

}  // namespace hdens
