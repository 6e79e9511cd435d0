#include "xiscope/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "xiscope/errors.hpp"

namespace xiscope {

using mp::Real;

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, const Real& x, Real& p, Real& dp) {
  Real p0(1);
  Real p1 = x;
  for (int k = 2; k <= n; ++k) {
    Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  p = p1;
  dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
}

std::shared_ptr<const GaussLegendreRule> compute(int n) {
  auto rule = std::make_shared<GaussLegendreRule>();
  rule->nodes.resize(static_cast<size_t>(n));
  rule->weights.resize(static_cast<size_t>(n));
  const Real tol = mp::pow(Real(2), -static_cast<long>(mp::working_bits()) + 8);
  const int m = (n + 1) / 2;
  Real p;
  Real dp;
  for (int i = 0; i < m; ++i) {
    Real x(std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)));
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      Real dx = p / dp;
      x -= dx;
      if (mp::abs(dx) < tol) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("Gauss-Legendre node iteration did not converge");
    legendre(n, x, p, dp);
    // Weight on [-1,1] is 2/((1-x^2) P'^2); halve it for [0,1].
    Real w = Real(1) / ((Real(1) - x * x) * dp * dp);
    const Real half(0.5);
    const auto lo = static_cast<size_t>(i);
    const auto hi = static_cast<size_t>(n - 1 - i);
    rule->nodes[lo] = half - half * x;
    rule->nodes[hi] = half + half * x;
    rule->weights[lo] = w;
    rule->weights[hi] = w;
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  if (n < 1) throw ContractError("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<std::pair<int, mpfr_prec_t>, std::shared_ptr<const GaussLegendreRule>> cache;
  const auto key = std::make_pair(n, mp::working_bits());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = compute(n);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace xiscope
