#include "xiscope/oracle.hpp"

#include <gmp.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "xiscope/errors.hpp"
#include "xiscope/xi_kernel.hpp"

namespace xiscope::oracle {

using mp::Real;

namespace {

constexpr int kGuardDigits = 10;
constexpr int kBernoulliCount = 400;

/// Exact B_{2k} = num/den from tangent numbers (Brent-Harvey):
/// B_{2k} = (-1)^{k-1} 2k T_k / (2^{2k} (2^{2k} - 1)).
class BernoulliTable {
 public:
  explicit BernoulliTable(int count) : num_(static_cast<size_t>(count) + 1), den_(num_.size()) {
    std::vector<__mpz_struct> tangent(static_cast<size_t>(count) + 1);
    for (auto& z : tangent) mpz_init(&z);
    mpz_set_ui(&tangent[1], 1);
    for (int k = 2; k <= count; ++k) mpz_mul_ui(&tangent[k], &tangent[k - 1], static_cast<unsigned long>(k - 1));
    mpz_t tmp;
    mpz_init(tmp);
    for (int k = 2; k <= count; ++k) {
      for (int j = k; j <= count; ++j) {
        mpz_mul_ui(tmp, &tangent[j - 1], static_cast<unsigned long>(j - k));
        mpz_mul_ui(&tangent[j], &tangent[j], static_cast<unsigned long>(j - k + 2));
        mpz_add(&tangent[j], &tangent[j], tmp);
      }
    }
    for (int k = 1; k <= count; ++k) {
      mpz_ptr n = &num_[static_cast<size_t>(k)];
      mpz_ptr d = &den_[static_cast<size_t>(k)];
      mpz_init(n);
      mpz_init(d);
      mpz_mul_ui(n, &tangent[k], static_cast<unsigned long>(2 * k));
      if (k % 2 == 0) mpz_neg(n, n);
      mpz_set_ui(d, 1);
      mpz_mul_2exp(d, d, static_cast<mp_bitcnt_t>(2 * k));  // 2^{2k}
      mpz_sub_ui(tmp, d, 1);
      mpz_mul(d, d, tmp);
    }
    mpz_clear(tmp);
    for (auto& z : tangent) mpz_clear(&z);
    mpz_init(&num_[0]);
    mpz_init(&den_[0]);
  }
  ~BernoulliTable() {
    for (auto& z : num_) mpz_clear(&z);
    for (auto& z : den_) mpz_clear(&z);
  }
  BernoulliTable(const BernoulliTable&) = delete;
  BernoulliTable& operator=(const BernoulliTable&) = delete;

  int size() const { return static_cast<int>(num_.size()) - 1; }

  Real value(int k) const {
    Real n;
    Real d;
    mpfr_set_z(n.raw(), &num_[static_cast<size_t>(k)], MPFR_RNDN);
    mpfr_set_z(d.raw(), &den_[static_cast<size_t>(k)], MPFR_RNDN);
    return n / d;
  }

 private:
  std::vector<__mpz_struct> num_;
  std::vector<__mpz_struct> den_;
};

const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table(kBernoulliCount);
  return table;
}

Real tolerance(int digits) { return mp::pow(Real(10), -static_cast<long>(digits)); }

bool is_real_value(const Complex& s, double value) {
  return s.im.is_zero() && s.re == Real(value);
}

}  // namespace

Real bernoulli_b2n(int k) {
  const auto& table = bernoulli_table();
  if (k < 1 || k > table.size()) {
    throw ResourceError("Bernoulli number B_" + std::to_string(2 * k) + " outside the table");
  }
  return table.value(k);
}

Complex s_from_strip(double beta, double t) { return {Real(0.5) + Real(beta), Real(t)}; }

Complex zeta_em(const Complex& s_in, const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  const Complex s(Real(s_in.re), Real(s_in.im));
  if (is_real_value(s, 1.0)) throw PoleError("zeta has a pole at s = 1");

  const double mag = abs(s).to_double();
  const long n_cut = std::max(10L, static_cast<long>(std::ceil(mag + 0.7 * cfg.digits)));
  Complex sum;
  for (long n = 1; n < n_cut; ++n) sum += pow(Real(n), -s);

  const Real big_n(n_cut);
  const Complex n_pow_minus_s = pow(big_n, -s);  // N^{-s}
  const Complex s_minus_1 = s - Complex(Real(1));
  sum += (n_pow_minus_s * big_n) / s_minus_1;
  sum += n_pow_minus_s * Real(0.5);

  // B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  const Real eps = tolerance(cfg.digits + 5);
  const Real inv_n2 = Real(1) / (big_n * big_n);
  Complex rising = s;                               // s(s+1)...(s+2k-2)
  Complex power = n_pow_minus_s * (Real(1) / big_n);  // N^{-s-2k+1}
  Real previous;
  bool first = true;
  Real magnitude;
  const auto& table = bernoulli_table();
  for (int k = 1;; ++k) {
    if (k > table.size()) throw NumericalError("zeta_em: Euler-Maclaurin tail did not converge");
    const Real coefficient = table.value(k) / mp::factorial(static_cast<unsigned long>(2 * k));
    Complex term = rising * power * coefficient;
    magnitude = abs(term);
    if (!first && magnitude > previous) {
      if (previous > tolerance(cfg.digits - 5)) {
        throw NumericalError("zeta_em: asymptotic tail diverged before reaching precision");
      }
      break;
    }
    sum += term;
    if (magnitude < eps) break;
    previous = magnitude;
    first = false;
    rising = rising * (s + Complex(Real(2 * k - 1))) * (s + Complex(Real(2 * k)));
    power = power * inv_n2;
  }
  return sum;
}

Complex log_gamma(const Complex& s_in, const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  const Complex s(Real(s_in.re), Real(s_in.im));
  if (s.im.is_zero() && s.re.sign() <= 0) {
    const double r = s.re.to_double();
    if (r == std::floor(r)) throw DomainError("log_gamma: pole at non-positive integer");
  }
  // Shift so the Stirling series reaches 10^-(digits+5): its smallest term is
  // about e^{-2 pi |z|}.
  const double radius = std::max(10.0, (cfg.digits + 5 + kGuardDigits) * std::log(10.0) / (2.0 * std::numbers::pi) + 2.0);
  const double re = s.re.to_double();
  const long shift = re >= radius ? 0 : static_cast<long>(std::ceil(radius - re));

  Complex shifted_log_product;  // sum_{j<shift} log(s + j)
  for (long j = 0; j < shift; ++j) shifted_log_product += log(s + Complex(Real(j)));
  const Complex z = s + Complex(Real(shift));

  const Complex log_z = log(z);
  Complex result = (z - Complex(Real(0.5))) * log_z - z;
  result += Complex(mp::log(Real::pi() * 2) / Real(2));

  const Real eps = tolerance(cfg.digits + 5);
  const Complex inv_z = Complex(Real(1)) / z;
  const Complex inv_z2 = inv_z * inv_z;
  Complex power = inv_z;  // z^{-(2k-1)}
  const auto& table = bernoulli_table();
  for (int k = 1;; ++k) {
    if (k > table.size()) throw NumericalError("log_gamma: Stirling series did not converge");
    const Real coefficient = table.value(k) / Real(static_cast<long>(2 * k) * (2 * k - 1));
    Complex term = power * coefficient;
    result += term;
    if (abs(term) < eps) break;
    power = power * inv_z2;
  }
  return result - shifted_log_product;
}

Complex xi_product(const Complex& s_in, const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  const Complex s(Real(s_in.re), Real(s_in.im));
  if (is_real_value(s, 0.0) || is_real_value(s, 1.0)) {
    throw PoleError("xi_product excludes s = 0 and s = 1");
  }
  const Complex half_s = s * Real(0.5);
  const Complex gamma = exp(log_gamma(half_s, cfg));
  const Complex pi_pow = pow(Real::pi(), -half_s);
  const Complex poly = s * (s - Complex(Real(1))) * Real(0.5);
  return poly * pi_pow * gamma * zeta_em(s, cfg);
}

double functional_eq_residual(const Complex& s, const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  const Complex reflected = Complex(Real(1)) - s;
  const Complex diff = xi_product(s, cfg) - xi_product(reflected, cfg);
  const double t = std::abs(s.im.to_double());
  return (abs(diff) / xi::scale_M(t, 0.5)).to_double();
}

double gamma_asymptotic_residual(double t, double beta, const PrecisionConfig& cfg) {
  if (!(t >= 20.0)) throw DomainError("gamma_asymptotic_residual needs t >= 20");
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  const Complex half_s = s_from_strip(beta, t) * Real(0.5);
  const Real log_modulus = log_gamma(half_s, cfg).re;
  const Real log_asymptotic = mp::log(Real::pi() * 2) / Real(2) +
                              (Real(beta) / Real(2) - Real(0.25)) * mp::log(Real(t / 2.0)) -
                              Real(t) * Real::pi() / Real(4);
  return std::abs((mp::exp(log_modulus - log_asymptotic) - Real(1)).to_double());
}

}  // namespace xiscope::oracle
