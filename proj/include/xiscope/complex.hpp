#pragma once

#include "xiscope/real.hpp"

namespace xiscope {

/// Extended-precision complex number. std::complex is unspecified for
/// non-builtin element types, so the few operations needed live here.
struct Complex {
  mp::Real re;
  mp::Real im;

  Complex() = default;
  Complex(mp::Real r, mp::Real i = mp::Real(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex conj() const { return {re, -im}; }
  Complex operator-() const { return {-re, -im}; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const mp::Real& k);

mp::Real abs(const Complex& z);
mp::Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
/// base^s for real base > 0.
Complex pow(const mp::Real& base, const Complex& s);

}  // namespace xiscope
