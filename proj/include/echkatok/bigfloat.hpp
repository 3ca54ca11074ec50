#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "echkatok/errors.hpp"

namespace ech {

// Thin RAII wrapper over an mpfr_t.  Every value carries its own precision;
// binary operations compute at the larger precision of the two operands with
// round-to-nearest.  Only the operations the library needs are provided.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_int(std::int64_t n, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
  }
  static BigFloat from_ratio(std::int64_t n, std::int64_t d, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    mpfr_div_si(r.v_, r.v_, d, MPFR_RNDN);
    return r;
  }
  // Parses a decimal string; throws InvalidArgument on trailing garbage.
  static BigFloat from_decimal(const std::string& text, mpfr_prec_t prec) {
    BigFloat r(prec);
    char* end = nullptr;
    int rc = mpfr_strtofr(r.v_, text.c_str(), &end, 10, MPFR_RNDN);
    (void)rc;
    if (end == text.c_str() || *end != '\0')
      throw InvalidArgument("cannot parse decimal number: " + text);
    return r;
  }
  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat sqrt2_over_2(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_sqrt_ui(r.v_, 2, MPFR_RNDN);
    mpfr_div_ui(r.v_, r.v_, 2, MPFR_RNDN);
    return r;
  }
  static BigFloat one_over_pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    mpfr_si_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  double to_double_up() const { return mpfr_get_d(v_, MPFR_RNDU); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator*(std::int64_t k) const {
    BigFloat r(prec());
    mpfr_mul_si(r.v_, v_, k, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat abs() const {
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend int cmp(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_);
  }
  int cmp_int(std::int64_t n) const { return mpfr_cmp_si(v_, n); }

  // Floor as a 64-bit integer; range-checked.
  std::int64_t floor_int() const {
    BigFloat f(prec());
    mpfr_floor(f.v_, v_);
    if (!mpfr_fits_slong_p(f.v_, MPFR_RNDN))
      throw OverflowError("floor exceeds 64-bit range");
    return mpfr_get_si(f.v_, MPFR_RNDN);
  }

  // Distance to the nearest integer (nonnegative).
  BigFloat nearest_int_distance() const {
    BigFloat lo(prec()), hi(prec());
    mpfr_floor(lo.v_, v_);
    mpfr_sub(lo.v_, v_, lo.v_, MPFR_RNDN);  // frac part in [0,1)
    mpfr_ui_sub(hi.v_, 1, lo.v_, MPFR_RNDN);
    return cmp(lo, hi) <= 0 ? lo : hi;
  }

  // True when |*this| <= |scale| * 2^log2eps.
  bool within_scaled_eps(const BigFloat& scale, long log2eps) const {
    BigFloat bound(joint(*this, scale));
    mpfr_mul_2si(bound.v_, scale.v_, log2eps, MPFR_RNDN);
    mpfr_abs(bound.v_, bound.v_, MPFR_RNDN);
    return mpfr_cmpabs(v_, bound.v_) <= 0;
  }

 private:
  static mpfr_prec_t joint(const BigFloat& a, const BigFloat& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
  }

  mpfr_t v_;
};

}  // namespace ech
