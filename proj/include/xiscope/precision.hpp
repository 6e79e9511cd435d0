#pragma once

#include <optional>

namespace xiscope {

/// Numerical knobs shared by every evaluation.
struct PrecisionConfig {
  /// Decimal working precision.
  int digits = 40;
  /// Series truncation target 10^-k; 0 means digits + 5.
  int series_eps_exponent = 0;
  /// Integral truncation point; unset means solved from the tail bound.
  std::optional<double> x_max;
  /// Gauss-Legendre nodes per quadrature panel.
  int nodes_per_halfperiod = 16;
  /// Root-bracketing grid refinement (grid step = mean zero spacing / max(10, grid_factor)).
  double grid_factor = 10.0;

  int series_exponent() const { return series_eps_exponent > 0 ? series_eps_exponent : digits + 5; }

  /// Throws ContractError if an invariant is broken.
  void validate() const;

  /// Config whose digits follow the precision schedule for t <= t_max.
  static PrecisionConfig for_t_max(double t_max);
};

/// Decimal digits needed to evaluate xi at height t: the integral is of size
/// e^{-t pi/4} while the integrand is O(1), plus 30 guard digits.
int required_digits(double t);

}  // namespace xiscope
