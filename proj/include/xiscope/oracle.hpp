// Independent route to xi through xi(s) = 1/2 s (s-1) pi^{-s/2} Gamma(s/2) zeta(s),
// with zeta from Euler-Maclaurin summation and log Gamma from the Stirling
// series. Shares no code with the kernel-integral route beyond the MPFR
// wrapper, so agreement between the two is a meaningful check.
#pragma once

#include "xiscope/complex.hpp"
#include "xiscope/precision.hpp"

namespace xiscope::oracle {

/// B_{2k} for k >= 1, exact, converted at the working precision.
/// Throws ResourceError past the tabulated range.
mp::Real bernoulli_b2n(int k);

/// zeta(s) for s != 1. Throws PoleError at s = 1.
Complex zeta_em(const Complex& s, const PrecisionConfig& cfg);

/// log Gamma(s), continuous along vertical lines in the right half-plane and
/// equal to the real logarithm on the positive axis. Throws DomainError at
/// non-positive integers.
Complex log_gamma(const Complex& s, const PrecisionConfig& cfg);

/// xi(s) by the product formula. Throws PoleError for s in {0, 1}, where the
/// zero of s(s-1) cancels the poles and the formula is not limit-handled.
Complex xi_product(const Complex& s, const PrecisionConfig& cfg);

/// |xi(s) - xi(1-s)| / M(|Im s|, 1/2).
double functional_eq_residual(const Complex& s, const PrecisionConfig& cfg);

/// | |Gamma(s/2)| / (sqrt(2 pi) (t/2)^{beta/2-1/4} e^{-t pi/4}) - 1 | with
/// s = 1/2 + beta + i t. Requires t >= 20.
double gamma_asymptotic_residual(double t, double beta, const PrecisionConfig& cfg);

/// Convenience: s = 1/2 + beta + i t.
Complex s_from_strip(double beta, double t);

}  // namespace xiscope::oracle
