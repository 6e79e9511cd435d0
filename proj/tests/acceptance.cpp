// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance [criterion numbers...]   (default: all twelve)
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "xiscope/fixture.hpp"
#include "xiscope/oracle.hpp"
#include "xiscope/report.hpp"
#include "xiscope/scanner.hpp"
#include "xiscope/theta.hpp"
#include "xiscope/xi_kernel.hpp"

namespace {

using namespace xiscope;
using report::num;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20240917;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fix(double x, int prec = 6) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

PrecisionConfig with_digits(int d) {
  PrecisionConfig cfg;
  cfg.digits = d;
  return cfg;
}

const std::vector<double> kScanBetas{0.1, 0.3, 0.5};
constexpr double kScanTMin = 5.0;
constexpr double kScanTMax = 110.0;

// The peak-valley scan feeds criteria 6 and 7; it runs once.
const scan::ScanReport& main_scan() {
  static const scan::ScanReport rep = [] {
    const PrecisionConfig cfg = with_digits(required_digits(kScanTMax));
    const scan::XiSource src(cfg);
    return scan::scan_range(src, kScanBetas, kScanTMin, kScanTMax, cfg);
  }();
  return rep;
}
double main_scan_seconds = 0.0;

// The 0.01-step grid feeds criteria 8 and 9.
const scan::GridSurvey& main_survey() {
  static const scan::GridSurvey s = [] {
    const PrecisionConfig cfg = with_digits(required_digits(kScanTMax));
    const scan::XiSource src(cfg);
    return scan::survey_grid(src, kScanBetas, kScanTMin, kScanTMax, 0.01, cfg);
  }();
  return s;
}

Outcome identity_suite() {
  const auto t0 = Clock::now();
  const PrecisionConfig cfg = with_digits(50);
  double worst = 0.0;
  for (double x : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    worst = std::max(worst, std::abs(theta::jacobi_residual(x, cfg).to_double()));
  }
  const double r1 = std::abs(theta::r1_residual(cfg, theta::R1Form::Corrected).to_double());
  const double literal = theta::r1_residual(cfg, theta::R1Form::Literal).to_double();
  const double secs = seconds_since(t0);
  const bool ok = worst < 1e-45 && r1 < 1e-45 && std::abs(literal - 0.50927) <= 1e-4 && secs < 1.0;
  return {ok, "max jacobi residual " + sci(worst) + ", r1 residual " + sci(r1) + ", quarter form " +
                  fix(literal, 6) + ", " + fix(secs, 3) + " s"};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> bd(0.0, 0.5);
  std::uniform_real_distribution<double> td(0.0, 60.0);
  double worst = 0.0;
  double worst_b = 0.0;
  double worst_t = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double b = bd(rng);
    const double t = td(rng);
    const PrecisionConfig cfg = with_digits(required_digits(t));
    mp::PrecisionScope scope(cfg.digits + 10);
    const xi::XiValue k = xi::eval_xi({b, t}, cfg);
    const Complex p = oracle::xi_product(oracle::s_from_strip(b, t), cfg);
    const double d = abs(Complex{k.u - p.re, k.v - p.im}).to_double() / xi::scale_M_double(t, 0.5);
    if (d >= worst) {
      worst = d;
      worst_b = b;
      worst_t = t;
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-15 && secs < 300.0, "max scaled discrepancy " + sci(worst) + " at (" + fix(worst_b, 3) +
                                             ", " + fix(worst_t, 3) + "), " + fix(secs, 1) + " s"};
}

Outcome beta_symmetry() {
  const auto t0 = Clock::now();
  const PrecisionConfig cfg = with_digits(required_digits(60));
  double worst = 0.0;
  std::vector<double> ts{1.0};
  for (double t = 5.0; t <= 60.0; t += 5.0) ts.push_back(t);
  for (double t : ts) {
    const xi::StripPoint p{0.0, t};
    const double scale = std::max(1.0, xi::scale_M_double(t, 0.0));
    const double v = std::abs(xi::eval_xi(p, cfg).v.to_double());
    const double k1 = std::abs(xi::eval_xi_derivative(p, 1, cfg).re.to_double());
    const double k2 = std::abs(xi::eval_xi_derivative(p, 2, cfg).im.to_double());
    worst = std::max({worst, v / scale, k1 / scale, k2 / scale});
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-20 && secs < 120.0,
          "max(|v|, |Re K'|, |Im K''|)/max(1, M) = " + sci(worst) + " over " + std::to_string(ts.size()) +
              " heights, " + fix(secs, 1) + " s"};
}

Outcome functional_equation() {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> sd(0.0, 1.0);
  std::uniform_real_distribution<double> td(0.5, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double sigma = sd(rng);
    const double t = td(rng);
    const PrecisionConfig cfg = with_digits(required_digits(t));
    worst = std::max(worst, oracle::functional_eq_residual({mp::Real(sigma), mp::Real(t)}, cfg));
  }
  return {worst < 1e-12, "max residual " + sci(worst) + " over 20 points"};
}

Outcome reference_zeros() {
  const PrecisionConfig cfg = with_digits(required_digits(100));
  const scan::XiSource src(cfg);
  const auto zeros = scan::find_u_zeros(src, 0.0, 0.0, 30.0, cfg);
  const auto ivs = scan::build_root_intervals(zeros, src, 0.0, cfg);
  const double ref[] = {14.134725, 21.022040, 25.010858};
  bool ok = ivs.size() >= 2;
  double worst = 0.0;
  if (ok) {
    const double got[] = {ivs[0].t_left, ivs[0].t_right, ivs[1].t_right};
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(got[i] - ref[i]));
    ok = worst < 1e-6;
  }
  const scan::ZeroCount zc = scan::zero_count_check(100.0, cfg);
  ok = ok && zc.count == 29 && zc.gap < 2.0 * std::log(100.0);
  return {ok, "first endpoints within " + sci(worst) + "; N(100) = " + std::to_string(zc.count) +
                  ", main term " + fix(zc.main_term, 2) + ", gap " + fix(zc.gap, 2)};
}

Outcome peak_valley_audit() {
  const auto t0 = Clock::now();
  const auto& rep = main_scan();
  main_scan_seconds = seconds_since(t0);
  std::size_t ok_count = 0;
  double min_mu = std::numeric_limits<double>::infinity();
  for (const auto& iv : rep.intervals) {
    if (iv.verdict == scan::Verdict::single_peak_ok) ++ok_count;
    min_mu = std::min(min_mu, iv.mu_scaled);
  }
  const bool ok = !rep.intervals.empty() && ok_count == rep.intervals.size() && min_mu > 0.0 &&
                  main_scan_seconds < 1800.0;
  return {ok, std::to_string(ok_count) + "/" + std::to_string(rep.intervals.size()) +
                  " intervals single_peak_ok, min mu_scaled " + sci(min_mu) + ", digits " +
                  std::to_string(rep.config.digits) + ", " + fix(main_scan_seconds, 0) + " s"};
}

Outcome figure_bound() {
  const auto& rep = main_scan();
  std::vector<std::string> hits;
  int considered = 0;
  for (const auto& iv : rep.intervals) {
    if (iv.t_left < 10.0 || iv.t_right > 35.0) continue;
    ++considered;
    if (iv.mu_scaled >= 0.04 && iv.mu_scaled <= 0.18) {
      hits.push_back("beta " + fix(iv.beta, 1) + " [" + fix(iv.t_left, 2) + ", " + fix(iv.t_right, 2) + "] " +
                     fix(iv.mu_scaled, 4));
    }
  }
  std::string detail = std::to_string(hits.size()) + " of " + std::to_string(considered) +
                       " intervals in [10, 35] have mu_scaled in [0.04, 0.18]";
  if (!hits.empty()) detail += ", e.g. " + hits.front();
  return {!hits.empty(), detail};
}

Outcome derivative_norm_bounds() {
  const auto& s = main_survey();
  const bool ok = s.first_min >= 0.15 && s.second_min >= 0.21;
  return {ok, "min (|u_b|/b + |v_b|)/M = " + fix(s.first_min, 4) + " at (" + fix(s.first_min_beta, 1) + ", " +
                  fix(s.first_min_t, 2) + ") [need 0.15]; min (|u_bb| + |v_bb|/b)/M = " + fix(s.second_min, 4) +
                  " at (" + fix(s.second_min_beta, 1) + ", " + fix(s.second_min_t, 2) + ") [need 0.21]; " +
                  std::to_string(s.points) + " points"};
}

Outcome lagarias_positivity() {
  const auto& s = main_survey();
  return {s.lagarias_nonpositive == 0 && s.points > 0,
          std::to_string(s.points) + " points, " + std::to_string(s.lagarias_nonpositive) +
              " non-positive, min psi/M^2 = " + sci(s.lagarias_min_scaled) + " at (" + fix(s.lagarias_min_beta, 1) +
              ", " + fix(s.lagarias_min_t, 2) + ")"};
}

Outcome lemma1_residuals() {
  const PrecisionConfig cfg = with_digits(required_digits(kScanTMax));
  const scan::XiSource src(cfg);
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> bd(0.0, 0.5);
  std::uniform_real_distribution<double> td(0.0, kScanTMax);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double b = bd(rng);
    if (b <= 0.0) b = 0.5;
    const double t = td(rng);
    worst = std::max(worst, scan::lemma1_residual({b, t}, src, 10, cfg) / src.scale(t, b));
  }
  return {worst < 1e-12, "max residual/M " + sci(worst) + " over 100 points"};
}

Outcome fixture_suite() {
  const auto t0 = Clock::now();
  const auto rows = scan::fixture_suite({0.01, false}, 0.2);
  const auto rows0 = scan::fixture_suite({0.0, false}, 0.2);
  const double secs = seconds_since(t0);
  auto get = [](const std::vector<scan::FixtureRow>& rs, const std::string& name) -> const scan::FixtureRow* {
    for (const auto& r : rs) {
      if (r.name == name) return &r;
    }
    return nullptr;
  };
  bool ok = secs < 1.0;
  for (const auto& r : rows) ok = ok && r.pass;
  for (const auto& r : rows0) ok = ok && r.pass;
  const auto* zl = get(rows, "zero_left");
  const auto* zr = get(rows, "zero_right");
  const auto* mu = get(rows, "mu");
  const auto* w = get(rows, "width");
  const auto* w0 = get(rows, "width_beta0");
  const auto* mu0 = get(rows0, "mu");
  if (!(zl && zr && mu && w && w0 && mu0)) return {false, "fixture scan did not produce one interval"};
  std::ostringstream os;
  os.precision(7);
  os << "zeros 2pi - " << 2 * kPi - zl->value << ", 2pi + " << zr->value - 2 * kPi << "; mu " << mu->value
     << "; width " << w->value << " > " << w0->value << "; double-root mu " << mu0->value << " (cosh 0.2 - 1 = "
     << std::cosh(0.2) - 1.0 << "); closed forms to 1e-5, " << fix(secs, 3) << " s";
  return {ok, os.str()};
}

int run_cli(const std::string& args, const std::string& env) {
  const std::string cmd = env + " " + XISCOPE_CLI + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "xiscope_acceptance";
  fs::create_directories(dir);
  const std::string args =
      "scan --beta 0.1,0.3,0.5 --t-min 5 --t-max 60 --digits auto --checks lagarias,lemma1,zero-count --out ";
  const int a = run_cli(args + (dir / "one.json").string(), "XISCOPE_THREADS=1");
  const int b = run_cli(args + (dir / "four.json").string(), "XISCOPE_THREADS=4");
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  const std::string ja = slurp(dir / "one.json");
  const std::string jb = slurp(dir / "four.json");
  fs::remove_all(dir);
  const bool same = !ja.empty() && ja == jb;
  return {same && a == b, "exit codes " + std::to_string(a) + "/" + std::to_string(b) + ", " +
                              std::to_string(ja.size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"identity suite", identity_suite},
      {"oracle equivalence", oracle_equivalence},
      {"beta-symmetry", beta_symmetry},
      {"functional equation", functional_equation},
      {"reference zeros", reference_zeros},
      {"peak-valley audit", peak_valley_audit},
      {"figure bound", figure_bound},
      {"derivative norm bounds", derivative_norm_bounds},
      {"Lagarias positivity", lagarias_positivity},
      {"Lemma-1 residuals", lemma1_residuals},
      {"fixture suite", fixture_suite},
      {"determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  int ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && selected.count(id) == 0) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    ++ran;
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %-24s %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
