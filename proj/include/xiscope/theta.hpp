// Jacobi theta series psi(x) = sum_{n>=1} exp(-n^2 pi x), its derivatives,
// the decay kernel f(x) = 2x^2 psi'' + 3x psi', and the identities they obey.
#pragma once

#include "xiscope/precision.hpp"
#include "xiscope/real.hpp"

namespace xiscope::theta {

struct ThetaValue {
  double x = 0.0;
  int order = 0;
  mp::Real value;
  int terms_used = 0;
};

/// k-th derivative of psi at x > 0, k in 0..3, summed term by term until the
/// first omitted term is below 10^-(series exponent) of the partial sum.
/// Throws DomainError for x <= 0 or a bad order, ResourceError if x is so
/// small that the series needs more than a million terms.
ThetaValue psi(const mp::Real& x, int order, const PrecisionConfig& cfg);
ThetaValue psi(double x, int order, const PrecisionConfig& cfg);

/// f(x) = 2x^2 psi''(x) + 3x psi'(x) for x >= 1. Summed as
/// sum n^2 pi x e^{-n^2 pi x} (2 n^2 pi x - 3), whose terms are all positive.
mp::Real f_decay(const mp::Real& x, const PrecisionConfig& cfg);
mp::Real f_decay(double x, const PrecisionConfig& cfg);

/// (2 psi(x) + 1) - x^{-1/2} (2 psi(1/x) + 1); vanishes by the Jacobi identity.
mp::Real jacobi_residual(double x, const PrecisionConfig& cfg);

enum class R1Form {
  /// 1/2 + psi(1) + 4 psi'(1): the relation that actually holds.
  Corrected,
  /// 1/2 + psi(1) + psi'(1)/4: kept as a negative control, evaluates to ~0.50927.
  Literal,
};

mp::Real r1_residual(const PrecisionConfig& cfg, R1Form form = R1Form::Corrected);

}  // namespace xiscope::theta
