// xiscope command-line front end.
//
// Exit codes: 0 when every check passes, 1 on usage or numerical errors,
// 2 when a structural anomaly (peak-valley, norm floor or Lagarias
// violation) is found.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xiscope/errors.hpp"
#include "xiscope/fixture.hpp"
#include "xiscope/oracle.hpp"
#include "xiscope/report.hpp"
#include "xiscope/scanner.hpp"
#include "xiscope/theta.hpp"
#include "xiscope/xi_kernel.hpp"

namespace {

using namespace xiscope;
using report::num;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAnomaly = 2;

const std::vector<std::string> kVerifyChecks = {
    "jacobi",  "r1",           "beta-symmetry",  "cauchy-riemann",   "lemma1",
    "lagarias", "functional-eq", "oracle-compare", "gamma-asymptotic", "zero-count"};

struct RunConfig {
  std::vector<double> beta_list{0.1, 0.3, 0.5};
  double t_min = 5.0;
  double t_max = 60.0;
  double t = 0.0;
  double point_beta = 0.0;
  double fixture_beta = 0.2;
  std::string digits = "auto";
  int samples = 1000;
  std::string out;
  std::string format;
  std::vector<std::string> checks;
  std::optional<double> fixture_epsilon;
  bool fixture_corrupt = false;
  double lagarias_step = 0.05;
  std::uint64_t seed = 20240917;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int resolve_digits(const std::string& spec, double t_max) {
  if (spec == "auto") return required_digits(t_max);
  try {
    std::size_t used = 0;
    const int d = std::stoi(spec, &used);
    if (used != spec.size()) throw UsageError("");
    return d;
  } catch (const std::exception&) {
    throw UsageError("--digits must be an integer or 'auto', got '" + spec + "'");
  }
}

PrecisionConfig make_config(const RunConfig& rc, double t_max) {
  PrecisionConfig cfg;
  cfg.digits = resolve_digits(rc.digits, t_max);
  cfg.validate();
  return cfg;
}

void check_ranges(const RunConfig& rc) {
  if (!(rc.t_min < rc.t_max)) throw UsageError("--t-min must be below --t-max");
  if (rc.t_min < 0.0) throw UsageError("--t-min must be non-negative");
  for (double b : rc.beta_list) {
    if (!(b >= 0.0 && b <= 0.5)) throw UsageError("--beta values must lie in [0, 0.5]");
  }
}

std::unique_ptr<scan::FieldSource> make_source(const RunConfig& rc, const PrecisionConfig& cfg) {
  if (rc.fixture_epsilon || rc.fixture_corrupt) {
    scan::SyntheticModel model;
    model.epsilon = rc.fixture_epsilon.value_or(0.01);
    model.corrupted = rc.fixture_corrupt;
    return std::make_unique<scan::SyntheticSource>(model, cfg.digits);
  }
  return std::make_unique<scan::XiSource>(cfg);
}

void emit(const RunConfig& rc, const std::string& content) {
  if (rc.out.empty() || rc.out == "-") {
    std::cout << content;
  } else {
    report::write_atomic(rc.out, content);
  }
}

int cmd_scan(const RunConfig& rc) {
  if (!rc.format.empty() && rc.format != "json") throw UsageError("scan supports --format json only");
  check_ranges(rc);
  const PrecisionConfig cfg = make_config(rc, rc.t_max);
  const auto source = make_source(rc, cfg);
  scan::ScanOptions opts;
  for (const auto& c : rc.checks) {
    if (c == "lagarias" || c == "lemma1") {
      opts.checks.insert(c);
    } else if (c == "zero-count" || c == "zero_count") {
      opts.checks.insert("zero_count");
    } else {
      throw UsageError("unknown scan check '" + c + "'; valid: lagarias, lemma1, zero-count");
    }
  }
  opts.lagarias_step = rc.lagarias_step;
  opts.seed = rc.seed;
  const scan::ScanReport rep = scan::scan_range(*source, rc.beta_list, rc.t_min, rc.t_max, cfg, opts);
  emit(rc, report::render(rep));
  if (rep.has_structural_anomaly()) return kExitAnomaly;
  return rep.all_pass() ? kExitOk : kExitError;
}

struct CheckOutcome {
  bool pass = false;
  double margin = 0.0;
  std::string detail;
  bool structural = false;
};

CheckOutcome check_jacobi(const PrecisionConfig& cfg) {
  double worst = 0.0;
  for (double x : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    worst = std::max(worst, std::abs(theta::jacobi_residual(x, cfg).to_double()));
  }
  const double tol = std::pow(10.0, -(cfg.digits - 5));
  return {worst < tol, worst, "max |residual| over x in [1/8, 8], tolerance " + num(tol)};
}

CheckOutcome check_r1(const PrecisionConfig& cfg) {
  const double r = std::abs(theta::r1_residual(cfg, theta::R1Form::Corrected).to_double());
  const double literal = theta::r1_residual(cfg, theta::R1Form::Literal).to_double();
  const double tol = std::pow(10.0, -(cfg.digits - 5));
  return {r < tol, r, "1/2 + psi(1) + 4 psi'(1); quarter-coefficient form gives " + num(literal)};
}

std::vector<double> symmetry_heights(double t_max) {
  std::vector<double> ts{1.0};
  for (double t = 5.0; t <= t_max + 1e-9; t += 5.0) ts.push_back(t);
  return ts;
}

CheckOutcome check_beta_symmetry(const RunConfig& rc, const PrecisionConfig& cfg) {
  double worst = 0.0;
  double worst_t = 0.0;
  for (double t : symmetry_heights(rc.t_max)) {
    const xi::StripPoint p{0.0, t};
    const xi::XiValue x = xi::eval_xi(p, cfg);
    const xi::DerivativeValue d1 = xi::eval_xi_derivative(p, 1, cfg);
    const xi::DerivativeValue d2 = xi::eval_xi_derivative(p, 2, cfg);
    const double scale = std::max(1.0, xi::scale_M_double(t, 0.0));
    const double val = std::max({std::abs(x.v.to_double()), std::abs(d1.re.to_double()),
                                 std::abs(d2.im.to_double())}) /
                       scale;
    if (val >= worst) {
      worst = val;
      worst_t = t;
    }
  }
  return {worst < 1e-20, worst, "max(|v|, |Re K'|, |Im K''|)/max(1, M) on beta = 0, worst at t = " + num(worst_t)};
}

CheckOutcome check_cauchy_riemann(const RunConfig& rc, const PrecisionConfig& cfg) {
  // Central differences in beta against the analytic t-derivatives.
  const double h = 1e-8;
  double worst = 0.0;
  std::mt19937_64 rng(rc.seed);
  std::uniform_real_distribution<double> bd(0.05, 0.45);
  std::uniform_real_distribution<double> td(std::max(rc.t_min, 1.0), rc.t_max);
  for (int i = 0; i < 8; ++i) {
    const double b = bd(rng);
    const double t = td(rng);
    mp::PrecisionScope scope(cfg.digits + 10);
    const xi::TGradient g = xi::t_gradient({b, t}, cfg);
    const xi::XiValue plus = xi::eval_xi({b + h, t}, cfg);
    const xi::XiValue minus = xi::eval_xi({b - h, t}, cfg);
    const mp::Real two_h = mp::Real(b + h) - mp::Real(b - h);
    const mp::Real u_beta = (plus.u - minus.u) / two_h;
    const mp::Real v_beta = (plus.v - minus.v) / two_h;
    const double m = xi::scale_M_double(t, b);
    worst = std::max(worst, mp::abs(g.u_t + v_beta).to_double() / m);
    worst = std::max(worst, mp::abs(g.v_t - u_beta).to_double() / m);
  }
  return {worst < 1e-12, worst, "max |u_t + v_beta|/M, |v_t - u_beta|/M with h = 1e-8"};
}

CheckOutcome check_lemma1(const RunConfig& rc, const PrecisionConfig& cfg) {
  const scan::XiSource source(cfg);
  std::mt19937_64 rng(rc.seed);
  std::uniform_real_distribution<double> bd(0.0, 0.5);
  std::uniform_real_distribution<double> td(rc.t_min, rc.t_max);
  const int n = std::max(1, std::min(rc.samples, 100));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double b = bd(rng);
    if (b <= 0.0) b = 0.5;
    const double t = td(rng);
    worst = std::max(worst, scan::lemma1_residual({b, t}, source, 10, cfg) / source.scale(t, b));
  }
  return {worst < 1e-12, worst, "max |v + int_0^beta u_t dr| / M over " + std::to_string(n) + " points"};
}

CheckOutcome check_lagarias(const RunConfig& rc, const PrecisionConfig& cfg) {
  std::vector<double> betas;
  for (double b : rc.beta_list) {
    if (b > 0.0) betas.push_back(b);
  }
  if (betas.empty()) throw UsageError("lagarias check needs a positive --beta");
  const scan::XiSource source(cfg);
  const scan::GridSurvey s = scan::survey_grid(source, betas, rc.t_min, rc.t_max, rc.lagarias_step, cfg);
  std::ostringstream os;
  os << s.points << " points, min psi/M^2 at beta = " << num(s.lagarias_min_beta)
     << ", t = " << num(s.lagarias_min_t);
  return {s.lagarias_nonpositive == 0, s.lagarias_min_scaled, os.str(), true};
}

CheckOutcome check_functional_eq(const RunConfig& rc, const PrecisionConfig& cfg) {
  std::mt19937_64 rng(rc.seed);
  std::uniform_real_distribution<double> sd(0.05, 0.95);
  std::uniform_real_distribution<double> td(1.0, std::min(rc.t_max, 50.0));
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double sigma = sd(rng);
    const double t = td(rng);
    worst = std::max(worst, oracle::functional_eq_residual({mp::Real(sigma), mp::Real(t)}, cfg));
  }
  return {worst < 1e-12, worst, "max |xi(s) - xi(1-s)| / M over 20 points"};
}

CheckOutcome check_oracle_compare(const RunConfig& rc, const PrecisionConfig& cfg) {
  std::mt19937_64 rng(rc.seed);
  std::uniform_real_distribution<double> bd(0.0, 0.5);
  std::uniform_real_distribution<double> td(0.0, rc.t_max);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double b = bd(rng);
    const double t = td(rng);
    mp::PrecisionScope scope(cfg.digits + 10);
    const xi::XiValue k = xi::eval_xi({b, t}, cfg);
    const Complex p = oracle::xi_product(oracle::s_from_strip(b, t), cfg);
    const double diff = abs(Complex{k.u - p.re, k.v - p.im}).to_double();
    worst = std::max(worst, diff / xi::scale_M_double(t, 0.5));
  }
  return {worst < 1e-15, worst, "max |kernel - product| / M(t, 1/2) over 50 points"};
}

CheckOutcome check_gamma_asymptotic(const RunConfig& rc, const PrecisionConfig& cfg) {
  double worst_ratio = 0.0;
  std::ostringstream os;
  for (double t : {20.0, 50.0, 100.0}) {
    for (double b : {0.0, 0.25, 0.5}) {
      const double r = oracle::gamma_asymptotic_residual(t, b, cfg);
      worst_ratio = std::max(worst_ratio, r * t / 10.0);
    }
  }
  (void)rc;
  os << "max residual * t / 10 over t in {20, 50, 100}; must stay below 1";
  return {worst_ratio < 1.0, worst_ratio, os.str()};
}

CheckOutcome check_zero_count(const RunConfig& rc, const PrecisionConfig& cfg) {
  const scan::ZeroCount zc = scan::zero_count_check(rc.t_max, cfg);
  std::ostringstream os;
  os << "count " << zc.count << ", main term " << num(zc.main_term) << ", bound 2 ln T = " << num(zc.bound);
  return {zc.pass, zc.gap, os.str()};
}

int cmd_verify(const RunConfig& rc) {
  std::vector<std::string> names = rc.checks.empty() ? kVerifyChecks : rc.checks;
  for (const auto& n : names) {
    if (std::find(kVerifyChecks.begin(), kVerifyChecks.end(), n) == kVerifyChecks.end()) {
      std::string valid;
      for (const auto& v : kVerifyChecks) valid += (valid.empty() ? "" : ", ") + v;
      throw UsageError("unknown check '" + n + "'; valid checks: " + valid);
    }
  }
  check_ranges(rc);
  const PrecisionConfig cfg = make_config(rc, rc.t_max);
  bool all_pass = true;
  bool structural = false;
  nlohmann::ordered_json j;
  j["config"] = report::config_json(cfg);
  j["checks"] = nlohmann::ordered_json::object();
  std::printf("%-18s %-5s %-24s %s\n", "check", "pass", "margin", "detail");
  for (const auto& n : names) {
    CheckOutcome c;
    if (n == "jacobi") c = check_jacobi(cfg);
    else if (n == "r1") c = check_r1(cfg);
    else if (n == "beta-symmetry") c = check_beta_symmetry(rc, cfg);
    else if (n == "cauchy-riemann") c = check_cauchy_riemann(rc, cfg);
    else if (n == "lemma1") c = check_lemma1(rc, cfg);
    else if (n == "lagarias") c = check_lagarias(rc, cfg);
    else if (n == "functional-eq") c = check_functional_eq(rc, cfg);
    else if (n == "oracle-compare") c = check_oracle_compare(rc, cfg);
    else if (n == "gamma-asymptotic") c = check_gamma_asymptotic(rc, cfg);
    else c = check_zero_count(rc, cfg);
    std::printf("%-18s %-5s %-24s %s\n", n.c_str(), c.pass ? "PASS" : "FAIL", num(c.margin).c_str(),
                c.detail.c_str());
    all_pass = all_pass && c.pass;
    structural = structural || (!c.pass && c.structural);
    j["checks"][n] = {{"pass", c.pass}, {"margin", num(c.margin)}};
  }
  if (!rc.out.empty()) report::write_atomic(rc.out, j.dump(2) + "\n");
  if (structural) return kExitAnomaly;
  return all_pass ? kExitOk : kExitError;
}

int cmd_curves(const RunConfig& rc) {
  check_ranges(rc);
  if (!rc.format.empty() && rc.format != "csv") throw UsageError("curves supports --format csv only");
  const PrecisionConfig cfg = make_config(rc, rc.t_max);
  const auto source = make_source(rc, cfg);
  emit(rc, report::curves_csv(report::sample_curves(*source, rc.beta_list, rc.t_min, rc.t_max, rc.samples)));
  return kExitOk;
}

int cmd_fixture(const RunConfig& rc) {
  scan::SyntheticModel model;
  model.epsilon = rc.fixture_epsilon.value_or(0.01);
  model.corrupted = rc.fixture_corrupt;
  const double beta = rc.fixture_beta;
  const int digits = rc.digits == "auto" ? 40 : resolve_digits(rc.digits, 0.0);
  const auto rows = scan::fixture_suite(model, beta, digits);
  bool all_pass = true;
  bool structural = false;
  std::printf("%-16s %-5s %-24s %s\n", "quantity", "pass", "value", "expected");
  for (const auto& r : rows) {
    std::printf("%-16s %-5s %-24s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", num(r.value).c_str(),
                num(r.expected).c_str());
    all_pass = all_pass && r.pass;
    structural = structural || (!r.pass && r.structural);
  }
  if (structural) return kExitAnomaly;
  return all_pass ? kExitOk : kExitError;
}

int cmd_oracle(const RunConfig& rc) {
  const xi::StripPoint p{rc.point_beta, rc.t};
  p.validate();
  const PrecisionConfig cfg = make_config(rc, rc.t);
  mp::PrecisionScope scope(cfg.digits + 10);
  const xi::XiValue k = xi::eval_xi(p, cfg);
  const Complex q = oracle::xi_product(oracle::s_from_strip(p.beta, p.t), cfg);
  const double m = xi::scale_M_double(p.t, p.beta);
  const double disc = abs(Complex{k.u - q.re, k.v - q.im}).to_double() / xi::scale_M_double(p.t, 0.5);
  const int shown = std::min(cfg.digits, 30);
  std::printf("point    beta = %s, t = %s, digits = %d\n", num(p.beta).c_str(), num(p.t).c_str(), cfg.digits);
  std::printf("kernel   u = %s  v = %s\n", k.u.to_string(shown).c_str(), k.v.to_string(shown).c_str());
  std::printf("product  u = %s  v = %s\n", q.re.to_string(shown).c_str(), q.im.to_string(shown).c_str());
  std::printf("scaled   u/M = %s  v/M = %s  (kernel)\n", num(k.u.to_double() / m).c_str(),
              num(k.v.to_double() / m).c_str());
  std::printf("scaled   u/M = %s  v/M = %s  (product)\n", num(q.re.to_double() / m).c_str(),
              num(q.im.to_double() / m).c_str());
  std::printf("discrepancy |kernel - product| / M(t, 1/2) = %s\n", num(disc).c_str());
  return disc < 1e-15 ? kExitOk : kExitError;
}

void add_common(CLI::App* cmd, RunConfig& rc, bool with_range) {
  cmd->add_option("--beta", rc.beta_list, "Comma-separated beta values in [0, 0.5]")->delimiter(',');
  cmd->add_option("--digits", rc.digits, "Decimal digits, or 'auto' for the precision schedule");
  if (with_range) {
    cmd->add_option("--t-min", rc.t_min, "Lower end of the t range");
    cmd->add_option("--t-max", rc.t_max, "Upper end of the t range");
  }
}

void add_fixture_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--fixture-epsilon", rc.fixture_epsilon, "Use the closed-form model cosh(tau) - 1 + epsilon");
  cmd->add_flag("--fixture-corrupt", rc.fixture_corrupt, "Report conj of the model (breaks the sign laws)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xiscope: numerical audit of xi on the critical strip"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* scan_cmd = app.add_subcommand("scan", "Detect root-intervals and verify the peak-valley structure");
  add_common(scan_cmd, rc, true);
  add_fixture_flags(scan_cmd, rc);
  scan_cmd->add_option("--checks", rc.checks, "Extra checks: lagarias, lemma1, zero-count")->delimiter(',');
  scan_cmd->add_option("--lagarias-step", rc.lagarias_step, "t step of the Lagarias grid");
  scan_cmd->add_option("--seed", rc.seed, "Seed for sampled checks");
  scan_cmd->add_option("--out", rc.out, "Report path (default stdout)");
  scan_cmd->add_option("--format", rc.format, "Output format (json)");

  auto* verify_cmd = app.add_subcommand("verify", "Run named verification suites");
  add_common(verify_cmd, rc, true);
  verify_cmd->add_option("--checks", rc.checks, "Checks to run (default all)")->delimiter(',');
  verify_cmd->add_option("--samples", rc.samples, "Sample count for lemma1");
  verify_cmd->add_option("--lagarias-step", rc.lagarias_step, "t step of the Lagarias grid");
  verify_cmd->add_option("--seed", rc.seed, "Seed for sampled checks");
  verify_cmd->add_option("--out", rc.out, "Optional JSON summary path");

  auto* curves_cmd = app.add_subcommand("curves", "Write u/M, v/M and the strip norm as CSV");
  add_common(curves_cmd, rc, true);
  add_fixture_flags(curves_cmd, rc);
  curves_cmd->add_option("--samples", rc.samples, "Rows per beta");
  curves_cmd->add_option("--format", rc.format, "Output format (csv)");
  curves_cmd->add_option("--out", rc.out, "CSV path (default stdout)");

  auto* fixture_cmd = app.add_subcommand("fixture", "Closed-form fixture suite");
  fixture_cmd->add_option("--beta", rc.fixture_beta, "beta of the fixture interval");
  fixture_cmd->add_option("--digits", rc.digits, "Decimal digits");
  add_fixture_flags(fixture_cmd, rc);

  auto* oracle_cmd = app.add_subcommand("oracle", "Evaluate one point by both routes");
  oracle_cmd->add_option("--beta", rc.point_beta, "beta");
  oracle_cmd->add_option("--t", rc.t, "t")->required();
  oracle_cmd->add_option("--digits", rc.digits, "Decimal digits, or 'auto'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (scan_cmd->parsed()) return cmd_scan(rc);
    if (verify_cmd->parsed()) return cmd_verify(rc);
    if (curves_cmd->parsed()) return cmd_curves(rc);
    if (fixture_cmd->parsed()) return cmd_fixture(rc);
    if (oracle_cmd->parsed()) return cmd_oracle(rc);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
