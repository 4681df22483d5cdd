#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace hdens {

/// Owning wrapper around an mpfr_t. Precision is fixed at construction;
/// every arithmetic helper takes an explicit rounding direction.
class bigfloat {
 public:
  static constexpr mpfr_prec_t default_precision = 256;  // ~77 decimal digits

  explicit bigfloat(mpfr_prec_t precision = default_precision) { mpfr_init2(v_, precision); mpfr_set_zero(v_, 1); }
  bigfloat(const mpq_class& q, mpfr_rnd_t rnd, mpfr_prec_t precision = default_precision) : bigfloat(precision) {
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  bigfloat(const bigfloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  bigfloat(bigfloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  bigfloat& operator=(bigfloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~bigfloat() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  /// Decimal string with `digits` significant digits, rounded in `rnd`.
  std::string str(std::size_t digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const {
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, digits, v_, rnd);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!mant.empty() && mant.front() == '-') {
      sign = "-";
      mant.erase(0, 1);
    }
    return sign + mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(exp10 - 1);
  }

  /// Sign of (this - q), computed exactly.
  int compare(const mpq_class& q) const { return mpfr_cmp_q(v_, q.get_mpq_t()); }

 private:
  mpfr_t v_;
};

}  // namespace hdens
