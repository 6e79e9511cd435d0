#include "xiscope/xi_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>
#include <vector>

#include "xiscope/errors.hpp"
#include "xiscope/gauss_legendre.hpp"
#include "xiscope/theta.hpp"

namespace xiscope::xi {

using mp::Real;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTierWidth = 8;
constexpr int kGuardDigits = 10;

double log_scale_M(double t, double beta) {
  return std::log(8.0) + (23.0 / 12.0 + beta / 6.0) * std::log(std::max(t / 2.0, 1.0)) -
         t * kPi / 4.0;
}

}  // namespace

void StripPoint::validate() const {
  if (!(std::abs(beta) <= 0.5)) {
    std::ostringstream os;
    os << "strip point outside |beta| <= 1/2: beta=" << beta;
    throw DomainError(os.str());
  }
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("strip point needs finite t >= 0");
}

void KernelFunction::check_decay() const {
  if (!(decay_rate > 0.0)) throw ContractError("kernel '" + name + "': decay rate must be positive");
  if (!evaluator) throw ContractError("kernel '" + name + "': no evaluator");
  for (double x : {1.0, 2.0, 5.0, 10.0, 20.0}) {
    const double bound = amplitude * std::pow(x, power) * std::exp(-decay_rate * x);
    const double value = std::abs(evaluator(Real(x)).to_double());
    if (value > bound * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "kernel '" << name << "' violates its decay bound at x=" << x << ": |g|=" << value
         << " > " << bound;
      throw ContractError(os.str());
    }
  }
}

KernelFunction theta_kernel(const PrecisionConfig& cfg) {
  KernelFunction g;
  g.name = "theta";
  g.evaluator = [cfg](const Real& x) { return theta::f_decay(x, cfg); };
  g.amplitude = 2.0 * kPi * kPi;
  g.decay_rate = kPi;
  g.power = 2.0;
  return g;
}

struct KernelIntegrator::Table {
  int tier = 0;
  double x_max = 0.0;
  double tail = 0.0;
  double l1 = 0.0;
  double w_max = 0.0;
  int panels = 0;
  int per_panel = 0;
  Real h;
  std::vector<Real> offsets;  // node positions inside a panel, in w
  std::vector<Real> a0;       // 4 h omega x^{1/4} g(x)
  std::vector<Real> a1;       // a0 w
  std::vector<Real> a2;       // a0 w^2
};

KernelIntegrator::KernelIntegrator(KernelFunction g, PrecisionConfig cfg)
    : g_(std::move(g)), cfg_(std::move(cfg)), work_digits_(cfg_.digits + kGuardDigits) {
  cfg_.validate();
  if (!(g_.decay_rate > 0.0)) throw ContractError("kernel decay rate must be positive");
}

double KernelIntegrator::tail_bound(double x_max) const {
  // |x^{+-tau/2}| <= x^{1/4}, so the order-k integrand is bounded by
  // 2 A x^{p-1/2} (ln x / 2)^k e^{-c x}; the tail integral is at most twice
  // the endpoint value over c once c X exceeds the polynomial growth.
  const double q = g_.power - 0.5;
  const double lx = std::log(x_max) / 2.0;
  const double log_bound = std::log(4.0 * g_.amplitude / g_.decay_rate) + q * std::log(x_max) +
                           2.0 * std::log(std::max(1.0, lx)) - g_.decay_rate * x_max;
  return std::exp(log_bound);
}

double KernelIntegrator::solve_x_max(double t_cap) const {
  const double log_target = -cfg_.digits * std::log(10.0) +
                            std::min(log_scale_M(t_cap, -0.5), log_scale_M(t_cap, 0.5));
  const double q = g_.power - 0.5;
  const double c = g_.decay_rate;
  const double floor = std::max(2.0, 2.0 * (std::abs(q) + 2.0) / c);
  double x = t_cap / 4.0 + 40.0;
  for (int it = 0; it < 100; ++it) {
    const double lx = std::log(x) / 2.0;
    const double next = std::max(
        floor, (std::log(4.0 * g_.amplitude / c) + q * std::log(x) +
                2.0 * std::log(std::max(1.0, lx)) - log_target) / c);
    if (std::abs(next - x) < 1e-9) return next;
    x = next;
  }
  return x;
}

double KernelIntegrator::x_max_for(double t) const { return table_for(t)->x_max; }

std::size_t KernelIntegrator::node_count_for(double t) const { return table_for(t)->a0.size(); }

std::shared_ptr<const KernelIntegrator::Table> KernelIntegrator::table_for(double t) const {
  const int tier = std::max(1, static_cast<int>(std::ceil(t / kTierWidth)));
  std::lock_guard lock(mutex_);
  auto it = tables_.find(tier);
  if (it != tables_.end()) return it->second;
  auto table = build_table(tier);
  tables_.emplace(tier, table);
  return table;
}

std::shared_ptr<const KernelIntegrator::Table> KernelIntegrator::build_table(int tier) const {
  mp::PrecisionScope scope(work_digits_);
  auto table = std::make_shared<Table>();
  const double t_cap = static_cast<double>(tier) * kTierWidth;
  table->tier = tier;
  table->x_max = cfg_.x_max ? *cfg_.x_max : solve_x_max(t_cap);
  table->tail = tail_bound(table->x_max);

  const Real w_max = mp::log(Real(table->x_max)) / Real(2);
  table->w_max = w_max.to_double();
  const double h_limit =
      std::min({kPi / (2.0 * t_cap), 0.5, 4.0 / (g_.decay_rate * table->x_max)});
  table->panels = std::max(1, static_cast<int>(std::ceil(table->w_max / h_limit)));
  table->per_panel = cfg_.nodes_per_halfperiod;
  table->h = w_max / Real(table->panels);

  const auto rule = gauss_legendre(table->per_panel);
  table->offsets.reserve(rule->nodes.size());
  for (const Real& node : rule->nodes) table->offsets.push_back(node * table->h);

  const std::size_t n = static_cast<std::size_t>(table->panels) * rule->nodes.size();
  table->a0.reserve(n);
  table->a1.reserve(n);
  table->a2.reserve(n);
  double l1 = 0.0;
  for (int j = 0; j < table->panels; ++j) {
    const Real start = Real(j) * table->h;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
      const Real w = start + table->offsets[i];
      const Real x = mp::exp(w * 2);
      const Real gx = g_.evaluator(x);
      Real a = Real(4) * table->h * rule->weights[i] * mp::exp(w / 2) * gx;
      Real aw = a * w;
      Real aww = aw * w;
      l1 += std::abs(a.to_double()) * (1.0 + w.to_double() * w.to_double());
      table->a0.push_back(std::move(a));
      table->a1.push_back(std::move(aw));
      table->a2.push_back(std::move(aww));
    }
  }
  table->l1 = l1;
  return table;
}

KernelMoments KernelIntegrator::integrate(const StripPoint& p, int max_order) const {
  p.validate();
  if (max_order < 0 || max_order > 2) throw ContractError("kernel moment order must be 0..2");
  const int need = required_digits(p.t);
  if (cfg_.digits < need) {
    std::ostringstream os;
    os << "t=" << p.t << " needs at least " << need << " digits, config has " << cfg_.digits;
    throw PrecisionError(os.str(), need);
  }
  const auto table = table_for(p.t);
  mp::PrecisionScope scope(work_digits_);

  const bool symmetric = p.beta == 0.0;
  const Real t(p.t);
  const Real beta(p.beta);
  const std::size_t per = table->offsets.size();

  // Panel step rotations and in-panel offsets.
  Real step_s;
  Real step_c;
  mp::sin_cos(step_s, step_c, t * table->h);
  Real step_sh;
  Real step_ch;
  mp::sinh_cosh(step_sh, step_ch, beta * table->h);
  std::vector<Real> off_c(per), off_s(per), off_ch(per), off_sh(per);
  for (std::size_t i = 0; i < per; ++i) {
    mp::sin_cos(off_s[i], off_c[i], t * table->offsets[i]);
    if (!symmetric) mp::sinh_cosh(off_sh[i], off_ch[i], beta * table->offsets[i]);
  }

  Real pc(1), ps(0), qc(1), qs(0);
  Real c, s, ch, sh, a_re, a_im, b_re, b_im, tmp1, tmp2;
  Real k0re, k0im, k1re, k1im, k2re, k2im;
  std::size_t idx = 0;
  for (int j = 0; j < table->panels; ++j) {
    for (std::size_t i = 0; i < per; ++i, ++idx) {
      mp::fmms_into(c, pc, off_c[i], ps, off_s[i]);
      mp::fmma_into(s, ps, off_c[i], pc, off_s[i]);
      const Real& a0 = table->a0[idx];
      if (symmetric) {
        // beta = 0: cosine kernel for K and K'', sine kernel for K'. The
        // other parts vanish identically and are never accumulated.
        mp::fma_into(k0re, a0, c, k0re);
        if (max_order >= 1) mp::fma_into(k1im, table->a1[idx], s, k1im);
        if (max_order >= 2) mp::fma_into(k2re, table->a2[idx], c, k2re);
        continue;
      }
      mp::fmma_into(ch, qc, off_ch[i], qs, off_sh[i]);
      mp::fmma_into(sh, qs, off_ch[i], qc, off_sh[i]);
      mp::mul_into(a_re, ch, c);
      mp::mul_into(a_im, sh, s);
      mp::fma_into(k0re, a0, a_re, k0re);
      mp::fma_into(k0im, a0, a_im, k0im);
      if (max_order >= 1) {
        mp::mul_into(b_re, sh, c);
        mp::mul_into(b_im, ch, s);
        mp::fma_into(k1re, table->a1[idx], b_re, k1re);
        mp::fma_into(k1im, table->a1[idx], b_im, k1im);
      }
      if (max_order >= 2) {
        mp::fma_into(k2re, table->a2[idx], a_re, k2re);
        mp::fma_into(k2im, table->a2[idx], a_im, k2im);
      }
    }
    mp::fmms_into(tmp1, pc, step_c, ps, step_s);
    mp::fmma_into(tmp2, ps, step_c, pc, step_s);
    std::swap(pc, tmp1);
    std::swap(ps, tmp2);
    if (!symmetric) {
      mp::fmma_into(tmp1, qc, step_ch, qs, step_sh);
      mp::fmma_into(tmp2, qs, step_ch, qc, step_sh);
      std::swap(qc, tmp1);
      std::swap(qs, tmp2);
    }
  }

  KernelMoments out;
  out.point = p;
  out.max_order = max_order;
  out.k[0] = Complex(std::move(k0re), std::move(k0im));
  out.k[1] = Complex(std::move(k1re), std::move(k1im));
  out.k[2] = Complex(std::move(k2re), std::move(k2im));
  out.m_scale = scale_M(p.t, p.beta);
  const double rounding = 8.0 * static_cast<double>(table->a0.size()) * table->l1 *
                          std::cosh(std::abs(p.beta) * table->w_max) *
                          std::pow(2.0, -static_cast<double>(mp::working_bits()));
  out.err_estimate = table->tail + rounding;
  if (!(out.err_estimate < 1e-10 * out.m_scale.to_double())) {
    std::ostringstream os;
    os << "kernel integral at beta=" << p.beta << ", t=" << p.t << " has error estimate "
       << out.err_estimate << " above 1e-10 M";
    throw NumericalError(os.str());
  }
  return out;
}

std::shared_ptr<const KernelIntegrator> xi_integrator(const PrecisionConfig& cfg) {
  using Key = std::tuple<int, int, double, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const KernelIntegrator>> registry;
  const Key key{cfg.digits, cfg.series_exponent(), cfg.x_max.value_or(0.0),
                cfg.nodes_per_halfperiod};
  std::lock_guard lock(mutex);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto integrator = std::make_shared<const KernelIntegrator>(theta_kernel(cfg), cfg);
  registry.emplace(key, integrator);
  return integrator;
}

Real scale_M(double t, double beta) {
  const Real base(std::max(t / 2.0, 1.0));
  const Real exponent = Real(23) / Real(12) + Real(beta) / Real(6);
  return Real(8) * mp::pow(base, exponent) * mp::exp(-Real(t) * Real::pi() / Real(4));
}

double scale_M_double(double t, double beta) { return std::exp(log_scale_M(t, beta)); }

XiValue to_xi_value(const KernelMoments& m) {
  XiValue out;
  out.point = m.point;
  out.u = m.k[0].re;
  out.v = m.k[0].im;
  out.m_scale = m.m_scale;
  out.u_scaled = (m.k[0].re / m.m_scale).to_double();
  out.v_scaled = (m.k[0].im / m.m_scale).to_double();
  out.err_estimate = m.err_estimate;
  return out;
}

XiValue eval_xi(const StripPoint& p, const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  return to_xi_value(xi_integrator(cfg)->integrate(p, 0));
}

DerivativeValue eval_xi_derivative(const StripPoint& p, int order, const PrecisionConfig& cfg) {
  if (order != 1 && order != 2) throw ContractError("xi derivative order must be 1 or 2");
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  const KernelMoments m = xi_integrator(cfg)->integrate(p, order);
  const auto k = static_cast<std::size_t>(order);
  return DerivativeValue{p, order, m.k[k].re, m.k[k].im, m.err_estimate};
}

TGradient t_gradient(const StripPoint& p, const PrecisionConfig& cfg) {
  const DerivativeValue d = eval_xi_derivative(p, 1, cfg);
  return TGradient{-d.im, d.re, d.err_estimate};
}

TransformValue eval_kernel_transform(const KernelFunction& g, const StripPoint& p, int order,
                                     const PrecisionConfig& cfg) {
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  g.check_decay();
  const KernelIntegrator integrator(g, cfg);
  const KernelMoments m = integrator.integrate(p, order);
  return TransformValue{m.k[static_cast<std::size_t>(order)], m.err_estimate};
}

Real norm_xi(const StripPoint& p, const PrecisionConfig& cfg) {
  if (!(p.beta >= 0.0 && p.beta <= 0.5)) throw ContractError("norm_xi needs beta in [0, 1/2]");
  mp::PrecisionScope scope(cfg.digits + kGuardDigits);
  const KernelMoments m = xi_integrator(cfg)->integrate(p, 1);
  if (p.beta == 0.0) return mp::abs(m.k[0].re) + mp::abs(m.k[1].im);
  return mp::abs(m.k[0].re) + mp::abs(m.k[0].im) / Real(p.beta);
}

}  // namespace xiscope::xi
