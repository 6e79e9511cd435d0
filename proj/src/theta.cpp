#include "xiscope/theta.hpp"

#include <string>

#include "xiscope/errors.hpp"

namespace xiscope::theta {

using mp::Real;

namespace {

constexpr long kMaxTerms = 1'000'000;

Real tolerance(const PrecisionConfig& cfg) {
  return mp::pow(Real(10), -static_cast<long>(cfg.series_exponent()));
}

}  // namespace

ThetaValue psi(const Real& x, int order, const PrecisionConfig& cfg) {
  if (!(x.sign() > 0)) throw DomainError("psi: x must be positive");
  if (order < 0 || order > 3) throw DomainError("psi: order must be in 0..3");
  mp::PrecisionScope scope(cfg.digits + 10);

  const Real pi = Real::pi();
  const Real pix = pi * x;
  const Real eps = tolerance(cfg);
  // q^{n^2} by the recurrence q^{(n+1)^2} = q^{n^2} q^{2n+1}.
  const Real q = mp::exp(-pix);
  const Real q2 = q * q;
  Real qn2 = q;   // q^{n^2}
  Real qodd = q;  // q^{2n-1}
  Real sum;
  Real term;
  Real abs_term;
  Real weight;
  long n = 1;
  for (;; ++n) {
    if (n > kMaxTerms) {
      throw ResourceError("psi: more than " + std::to_string(kMaxTerms) + " terms needed at x=" +
                          x.to_string(8));
    }
    // (-n^2 pi)^order
    weight = Real(1);
    for (int k = 0; k < order; ++k) weight *= -(pi * Real(n * n));
    mp::mul_into(term, weight, qn2);
    sum += term;
    abs_term = mp::abs(term);
    // Past the peak of n^{2k} e^{-n^2 pi x} the tail is dominated by its first term.
    const bool past_peak = static_cast<double>(n * n) * pix.to_double() > order + 1.0;
    if (past_peak && abs_term <= eps * mp::abs(sum)) break;
    if (qn2.is_zero()) break;
    qodd *= q2;
    qn2 *= qodd;
  }
  ThetaValue out;
  out.x = x.to_double();
  out.order = order;
  out.value = std::move(sum);
  out.terms_used = static_cast<int>(n);
  return out;
}

ThetaValue psi(double x, int order, const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + 10);
  return psi(Real(x), order, cfg);
}

Real f_decay(const Real& x, const PrecisionConfig& cfg) {
  if (x < Real(1)) throw DomainError("f_decay: x must be >= 1");
  mp::PrecisionScope scope(cfg.digits + 10);
  const Real pix = Real::pi() * x;
  const Real eps = tolerance(cfg);
  const Real q = mp::exp(-pix);
  const Real q2 = q * q;
  Real qn2 = q;
  Real qodd = q;
  Real sum;
  Real a;  // n^2 pi x
  Real term;
  for (long n = 1; n <= kMaxTerms; ++n) {
    a = pix * Real(n * n);
    term = a * qn2 * (a * 2 - Real(3));
    sum += term;
    if (term <= eps * sum || qn2.is_zero()) return sum;
    qodd *= q2;
    qn2 *= qodd;
  }
  throw ResourceError("f_decay: series did not converge");
}

Real f_decay(double x, const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + 10);
  return f_decay(Real(x), cfg);
}

Real jacobi_residual(double x, const PrecisionConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("jacobi_residual: x must be positive");
  mp::PrecisionScope scope(cfg.digits + 10);
  const Real xr(x);
  const Real inv = Real(1) / xr;
  const Real lhs = psi(xr, 0, cfg).value * 2 + Real(1);
  const Real rhs = (psi(inv, 0, cfg).value * 2 + Real(1)) / mp::sqrt(xr);
  return lhs - rhs;
}

Real r1_residual(const PrecisionConfig& cfg, R1Form form) {
  mp::PrecisionScope scope(cfg.digits + 10);
  const Real p0 = psi(1.0, 0, cfg).value;
  const Real p1 = psi(1.0, 1, cfg).value;
  const Real coefficient = form == R1Form::Corrected ? Real(4) : Real(0.25);
  return Real(0.5) + p0 + coefficient * p1;
}

}  // namespace xiscope::theta
