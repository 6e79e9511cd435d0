#pragma once

#include <memory>
#include <vector>

#include "xiscope/real.hpp"

namespace xiscope {

/// n-point Gauss-Legendre rule mapped to [0, 1].
struct GaussLegendreRule {
  std::vector<mp::Real> nodes;
  std::vector<mp::Real> weights;
};

/// Rule for n nodes at the calling thread's working precision. Rules are
/// computed once per (n, precision) and shared read-only afterwards.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

}  // namespace xiscope
