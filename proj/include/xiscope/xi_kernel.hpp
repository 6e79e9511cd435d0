// The xi function through Riemann's kernel integral
//
//   xi(tau)   = int_1^inf (x^{tau/2} + x^{-tau/2}) x^{-3/4} f(x) dx
//   xi'(tau)  = 1/2 int_1^inf (x^{tau/2} - x^{-tau/2}) x^{-3/4} ln(x) f(x) dx
//   xi''(tau) = 1/4 int_1^inf (x^{tau/2} + x^{-tau/2}) x^{-3/4} ln^2(x) f(x) dx
//
// with tau = beta + i t and f the theta decay kernel, or any KernelFunction g
// with exponential decay in its place.
//
// Quadrature runs in w = ln(x)/2, where the oscillation is cos(t w), sin(t w)
// with period 2 pi / t. The range [0, W] is cut into uniform panels no longer
// than a quarter period and integrated with a fixed Gauss-Legendre rule per
// panel. Panel phases come from a rotation recurrence, so one evaluation costs
// a handful of multiplications per node. Kernel values at the nodes are kept
// in read-only tables shared across threads. Tables are keyed by a t-tier
// (t rounded up to a multiple of 8), so a table serves every t below its cap.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "xiscope/complex.hpp"
#include "xiscope/precision.hpp"
#include "xiscope/real.hpp"

namespace xiscope::xi {

/// tau = beta + i t with beta = Re(s) - 1/2.
struct StripPoint {
  double beta = 0.0;
  double t = 0.0;

  /// Throws DomainError unless |beta| <= 1/2 and t >= 0.
  void validate() const;
};

struct XiValue {
  StripPoint point;
  mp::Real u;
  mp::Real v;
  mp::Real m_scale;
  double u_scaled = 0.0;
  double v_scaled = 0.0;
  double err_estimate = 0.0;
};

/// xi' (order 1) or xi'' (order 2) split as re + i im, i.e. (u_beta, v_beta)
/// or (u_betabeta, v_betabeta).
struct DerivativeValue {
  StripPoint point;
  int order = 1;
  mp::Real re;
  mp::Real im;
  double err_estimate = 0.0;
};

/// Integrand replacing f in the kernel integrals. The decay metadata promises
/// |g(x)| <= amplitude * x^power * exp(-decay_rate * x) for x >= 1.
struct KernelFunction {
  std::string name;
  std::function<mp::Real(const mp::Real&)> evaluator;
  double amplitude = 1.0;
  double decay_rate = 1.0;
  double power = 0.0;

  /// Spot-checks the decay bound at x in {1, 2, 5, 10, 20}; throws ContractError.
  void check_decay() const;
};

/// The theta decay kernel f(x) = 2x^2 psi'' + 3x psi', bounded by 2 pi^2 x^2 e^{-pi x}.
KernelFunction theta_kernel(const PrecisionConfig& cfg);

/// K, K', K'' of one kernel at one point, evaluated in a single pass.
struct KernelMoments {
  StripPoint point;
  int max_order = 0;
  std::array<Complex, 3> k;
  mp::Real m_scale;
  double err_estimate = 0.0;
};

class KernelIntegrator {
 public:
  KernelIntegrator(KernelFunction g, PrecisionConfig cfg);

  /// Moments up to max_order (0..2). Throws PrecisionError when cfg.digits is
  /// below required_digits(t).
  KernelMoments integrate(const StripPoint& p, int max_order) const;

  const PrecisionConfig& config() const { return cfg_; }
  const KernelFunction& kernel() const { return g_; }

  /// Truncation point used for points with height t.
  double x_max_for(double t) const;
  /// Number of quadrature nodes used for points with height t.
  std::size_t node_count_for(double t) const;

 private:
  struct Table;
  std::shared_ptr<const Table> table_for(double t) const;
  std::shared_ptr<const Table> build_table(int tier) const;
  double solve_x_max(double t_cap) const;
  double tail_bound(double x_max) const;

  KernelFunction g_;
  PrecisionConfig cfg_;
  int work_digits_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const Table>> tables_;
};

/// Shared integrator for the theta kernel under cfg.
std::shared_ptr<const KernelIntegrator> xi_integrator(const PrecisionConfig& cfg);

/// M = 8 max(t/2, 1)^{23/12 + beta/6} e^{-t pi/4}, the normalisation that
/// offsets the exponential decay of xi along the strip.
mp::Real scale_M(double t, double beta);
double scale_M_double(double t, double beta);

XiValue eval_xi(const StripPoint& p, const PrecisionConfig& cfg);
DerivativeValue eval_xi_derivative(const StripPoint& p, int order, const PrecisionConfig& cfg);

struct TGradient {
  mp::Real u_t;
  mp::Real v_t;
  double err_estimate = 0.0;
};

/// (u_t, v_t) = (-v_beta, u_beta) by Cauchy-Riemann.
TGradient t_gradient(const StripPoint& p, const PrecisionConfig& cfg);

struct TransformValue {
  Complex value;
  double err_estimate = 0.0;
};

/// K(g), K'(g) or K''(g) at p. Checks the decay bound first.
TransformValue eval_kernel_transform(const KernelFunction& g, const StripPoint& p, int order,
                                     const PrecisionConfig& cfg);

/// |u| + |v|/beta for beta > 0, |u(t,0)| + |u_t(t,0)| at beta = 0.
mp::Real norm_xi(const StripPoint& p, const PrecisionConfig& cfg);

XiValue to_xi_value(const KernelMoments& m);

}  // namespace xiscope::xi
