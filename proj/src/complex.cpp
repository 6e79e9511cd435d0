#include "xiscope/complex.hpp"

namespace xiscope {

using mp::Real;

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  Complex r;
  r.re = Real::with_bits(std::max(a.re.bits(), b.re.bits()));
  r.im = Real::with_bits(r.re.bits());
  mp::fmms_into(r.re, a.re, b.re, a.im, b.im);
  mp::fmma_into(r.im, a.re, b.im, a.im, b.re);
  return r;
}

Complex operator/(const Complex& a, const Complex& b) {
  Real den = b.re * b.re + b.im * b.im;
  Complex num = a * b.conj();
  return {num.re / den, num.im / den};
}

Complex operator*(const Complex& a, const Real& k) { return {a.re * k, a.im * k}; }

Real abs(const Complex& z) {
  Real r = Real::with_bits(std::max(z.re.bits(), z.im.bits()));
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& z) { return mp::atan2(z.im, z.re); }

Complex exp(const Complex& z) {
  Real mag = mp::exp(z.re);
  Real s = Real::with_bits(z.im.bits());
  Real c = Real::with_bits(z.im.bits());
  mp::sin_cos(s, c, z.im);
  return {mag * c, mag * s};
}

Complex log(const Complex& z) { return {mp::log(abs(z)), arg(z)}; }

Complex pow(const Real& base, const Complex& s) {
  Real lb = mp::log(base);
  return exp(Complex{s.re * lb, s.im * lb});
}

}  // namespace xiscope
