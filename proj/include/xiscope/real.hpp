// Thin value-semantic wrapper over an MPFR float.
//
// Every Real carries its own precision. Values built from doubles or integers
// take the calling thread's working precision, which is set with a
// PrecisionScope. Binary operators produce a result at the larger of the two
// operand precisions. Hot loops should prefer the in-place helpers
// (mul_into, fma_into, ...) which do not allocate.
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

namespace xiscope::mp {

/// Binary precision used for `digits10` decimal digits (plus a few guard bits).
mpfr_prec_t bits_for_digits(int digits10);

/// Thread-local working precision in bits.
mpfr_prec_t working_bits();

/// RAII guard that sets the calling thread's working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real();
  Real(double d);          // NOLINT(google-explicit-constructor)
  Real(int i);             // NOLINT(google-explicit-constructor)
  Real(long i);            // NOLINT(google-explicit-constructor)
  Real(unsigned long i);   // NOLINT(google-explicit-constructor)
  Real(const Real& other);
  Real(Real&& other) noexcept;
  ~Real();

  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  Real& operator=(double d);

  static Real with_bits(mpfr_prec_t bits);
  static Real from_string(const std::string& text);
  static Real pi();
  static Real ln10();

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long k);
  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  explicit Real(mpfr_prec_t bits, int /*tag*/);
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& base, const Real& e);
Real pow(const Real& base, long e);
Real factorial(unsigned long n);
void sin_cos(Real& s, Real& c, const Real& x);
void sinh_cosh(Real& sh, Real& ch, const Real& x);

/// out = a * b, without reallocating `out`.
inline void mul_into(Real& out, const Real& a, const Real& b) {
  mpfr_mul(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
}
/// out = a * b + c.
inline void fma_into(Real& out, const Real& a, const Real& b, const Real& c) {
  mpfr_fma(out.raw(), a.raw(), b.raw(), c.raw(), MPFR_RNDN);
}
/// out = a * b - c * d.
inline void fmms_into(Real& out, const Real& a, const Real& b, const Real& c, const Real& d) {
  mpfr_fmms(out.raw(), a.raw(), b.raw(), c.raw(), d.raw(), MPFR_RNDN);
}
/// out = a * b + c * d.
inline void fmma_into(Real& out, const Real& a, const Real& b, const Real& c, const Real& d) {
  mpfr_fmma(out.raw(), a.raw(), b.raw(), c.raw(), d.raw(), MPFR_RNDN);
}

}  // namespace xiscope::mp
