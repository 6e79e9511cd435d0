#include "xiscope/fixture.hpp"

#include <cmath>
#include <numbers>

#include "xiscope/errors.hpp"
#include "xiscope/scanner.hpp"

namespace xiscope::scan {

namespace {

constexpr double kTol = 1e-5;

FixtureRow row(std::string name, double value, double expected, bool structural = false) {
  return {std::move(name), value, expected, std::abs(value - expected) <= kTol, structural};
}

}  // namespace

std::vector<FixtureRow> fixture_suite(const SyntheticModel& model, double beta, int digits) {
  if (!(beta > 0.0 && beta <= 0.5)) throw ContractError("fixture suite requires 0 < beta <= 1/2");
  if (!(model.epsilon >= 0.0 && model.epsilon < 1.0)) {
    throw ContractError("fixture suite requires 0 <= epsilon < 1");
  }
  const double pi = std::numbers::pi;
  const double two_pi = 2.0 * pi;
  const double eps = model.epsilon;
  const SyntheticSource source(model, digits);
  PrecisionConfig cfg;
  cfg.digits = digits;

  std::vector<FixtureRow> rows;
  const auto zeros = find_u_zeros(source, beta, pi, 3.0 * pi, cfg);
  const auto ivs = build_root_intervals(zeros, source, beta, cfg, 1);
  const double half = std::acos((1.0 - eps) / std::cosh(beta));
  rows.push_back(row("interval_count", static_cast<double>(ivs.size()), 1.0));
  if (ivs.size() != 1) return rows;

  const RootInterval iv = verify_peak_valley(ivs.front(), source, cfg);
  rows.push_back(row("zero_left", iv.t_left, two_pi - half));
  rows.push_back(row("zero_right", iv.t_right, two_pi + half));
  rows.push_back(row("u_sign_inside", iv.u_sign_inside, 1.0, true));
  rows.push_back(row("single_peak_ok", iv.verdict == Verdict::single_peak_ok ? 1.0 : 0.0, 1.0, true));
  rows.push_back(row("v_inner_zero", iv.v_inner_zero.value_or(std::nan("")), two_pi));
  rows.push_back(row("mu", iv.mu, std::cosh(beta) - 1.0 + eps, true));

  const LagariasValue lag = lagarias_psi({beta, two_pi}, source, cfg);
  rows.push_back(row("lagarias_at_2pi", lag.psi.to_double(),
                     std::sinh(beta) * (std::cosh(beta) - (1.0 - eps)), true));

  const double shift = (synthetic_eval(model, {beta, two_pi}, Quantity::u) -
                        synthetic_eval(model, {0.0, two_pi}, Quantity::u))
                           .to_double();
  rows.push_back(row("parallel_shift", shift, std::cosh(beta) - 1.0));

  const double width = iv.t_right - iv.t_left;
  rows.push_back(row("width", width, 2.0 * half));
  if (eps > 0.0) {
    // On beta = 0 the interval is [2 pi - acos(1 - eps), 2 pi + acos(1 - eps)].
    const auto zeros0 = find_u_zeros(source, 0.0, pi, 3.0 * pi, cfg);
    const double width0 = zeros0.size() == 2 ? zeros0[1] - zeros0[0] : std::nan("");
    rows.push_back(row("width_beta0", width0, 2.0 * std::acos(1.0 - eps)));
    rows.push_back({"enlargement", width - width0, 2.0 * half - 2.0 * std::acos(1.0 - eps),
                    width > width0, false});
  }
  return rows;
}

}  // namespace xiscope::scan
