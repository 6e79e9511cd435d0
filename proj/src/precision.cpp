#include "xiscope/precision.hpp"

#include <cmath>
#include <string>

#include "xiscope/errors.hpp"

namespace xiscope {

void PrecisionConfig::validate() const {
  if (digits < 20) throw ContractError("digits must be >= 20, got " + std::to_string(digits));
  if (x_max && !(*x_max >= 2.0)) throw ContractError("x_max must be >= 2");
  if (nodes_per_halfperiod < 8) throw ContractError("nodes_per_halfperiod must be >= 8");
  if (!(grid_factor > 0.0)) throw ContractError("grid_factor must be positive");
  if (series_eps_exponent < 0) throw ContractError("series_eps_exponent must be non-negative");
}

PrecisionConfig PrecisionConfig::for_t_max(double t_max) {
  PrecisionConfig cfg;
  cfg.digits = required_digits(t_max);
  return cfg;
}

int required_digits(double t) {
  // tπ/(4 ln 10) ≈ 0.3413 t decimal digits are lost to cancellation.
  return static_cast<int>(std::ceil(0.3413 * std::max(t, 0.0))) + 30;
}

}  // namespace xiscope
