#include "xiscope/real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace xiscope::mp {

namespace {

thread_local mpfr_prec_t tl_working_bits = bits_for_digits(30);

mpfr_prec_t max_bits(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

mpfr_prec_t bits_for_digits(int digits10) {
  return static_cast<mpfr_prec_t>(std::ceil(digits10 * 3.321928094887362)) + 16;
}

mpfr_prec_t working_bits() { return tl_working_bits; }

PrecisionScope::PrecisionScope(int digits10) : saved_(tl_working_bits) {
  tl_working_bits = bits_for_digits(digits10);
}

PrecisionScope::~PrecisionScope() { tl_working_bits = saved_; }

Real::Real(mpfr_prec_t bits, int /*tag*/) { mpfr_init2(v_, bits); }

Real::Real() : Real(tl_working_bits, 0) { mpfr_set_zero(v_, 1); }
Real::Real(double d) : Real(tl_working_bits, 0) { mpfr_set_d(v_, d, MPFR_RNDN); }
Real::Real(int i) : Real(tl_working_bits, 0) { mpfr_set_si(v_, i, MPFR_RNDN); }
Real::Real(long i) : Real(tl_working_bits, 0) { mpfr_set_si(v_, i, MPFR_RNDN); }
Real::Real(unsigned long i) : Real(tl_working_bits, 0) { mpfr_set_ui(v_, i, MPFR_RNDN); }

Real::Real(const Real& other) : Real(other.bits(), 0) { mpfr_set(v_, other.v_, MPFR_RNDN); }

Real::Real(Real&& other) noexcept {
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
}

Real::~Real() {
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (v_[0]._mpfr_d == nullptr) {
    mpfr_init2(v_, other.bits());
  } else if (bits() != other.bits()) {
    mpfr_set_prec(v_, other.bits());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  std::swap(v_[0], other.v_[0]);
  return *this;
}

Real& Real::operator=(double d) {
  if (v_[0]._mpfr_d == nullptr) mpfr_init2(v_, tl_working_bits);
  mpfr_set_d(v_, d, MPFR_RNDN);
  return *this;
}

Real Real::with_bits(mpfr_prec_t bits) {
  Real r(bits, 0);
  mpfr_set_zero(r.v_, 1);
  return r;
}

Real Real::from_string(const std::string& text) {
  Real r(tl_working_bits, 0);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: " + text);
  }
  return r;
}

Real Real::pi() {
  Real r(tl_working_bits, 0);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::ln10() {
  Real r(10);
  mpfr_log(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return buf.data();
}

Real& Real::operator+=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(bits(), 0);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(max_bits(a, b), 0);
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(max_bits(a, b), 0);
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(max_bits(a, b), 0);
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(max_bits(a, b), 0);
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

namespace {

template <class Fn>
Real unary(const Real& x, Fn fn) {
  Real r = Real::with_bits(x.bits());
  fn(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }

Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_bits(std::max(x.bits(), y.bits()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& e) {
  Real r = Real::with_bits(std::max(base.bits(), e.bits()));
  mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, long e) {
  Real r = Real::with_bits(base.bits());
  mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
  return r;
}

Real factorial(unsigned long n) {
  Real r = Real::with_bits(working_bits());
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

void sin_cos(Real& s, Real& c, const Real& x) { mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN); }

void sinh_cosh(Real& sh, Real& ch, const Real& x) {
  mpfr_sinh_cosh(sh.raw(), ch.raw(), x.raw(), MPFR_RNDN);
}

}  // namespace xiscope::mp
