// Root-interval detection and peak-valley verification.
//
// For fixed beta the zeros of u(., beta) cut the t-axis into root-intervals
// I_j = [t_j, t_{j+1}] with u of one sign inside. On each interval the
// scanner checks the peak-valley shape: v has opposite signs at the two
// endpoints (v < 0 on the left, v > 0 on the right when u > 0 inside), v
// vanishes once inside, |u| has a single extremum, and the strip norm
// phi = |u| + |v|/beta stays bounded away from zero.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xiscope/precision.hpp"
#include "xiscope/sources.hpp"

namespace xiscope::scan {

enum class Verdict { unverified, single_peak_ok, multi_peak_anomaly, sign_anomaly };

std::string to_string(Verdict v);

struct RootInterval {
  double beta = 0.0;
  double t_left = 0.0;
  double t_right = 0.0;
  int u_sign_inside = 0;
  double v_left = 0.0;
  double v_right = 0.0;
  std::optional<double> v_inner_zero;
  int v_zero_count = 0;
  double mu = 0.0;
  double mu_scaled = 0.0;
  double mu_at = 0.0;
  /// mu exceeds ten times the evaluation error, so the norm floor is resolved.
  bool mu_resolved = false;
  int extrema_count = 0;
  Verdict verdict = Verdict::unverified;
};

/// Diagnostic or anomaly record. Structural anomalies (sign_anomaly,
/// multi_peak_anomaly, norm_floor, lagarias) are candidate counterexamples.
struct Finding {
  std::string kind;
  double beta = 0.0;
  double t_left = 0.0;
  double t_right = 0.0;
  std::string detail;
};

struct ZeroSearchOptions {
  int threads = 0;
  /// Grid refinements allowed when the spacing audit finds crowded zeros.
  int max_rescans = 3;
};

/// Grid step for bracketing: a tenth (or 1/grid_factor) of the mean zero spacing 2 pi / ln(t / 2 pi).
double bracket_step(double t, double grid_factor);

/// Sign-change zeros of u(., beta) in [t_min, t_max], refined by bisection to
/// bracket width < 1e-9. Near-tangencies without a sign change and grid
/// refinements are appended to `diagnostics` when given.
std::vector<double> find_u_zeros(const FieldSource& source, double beta, double t_min,
                                 double t_max, const PrecisionConfig& cfg,
                                 std::vector<Finding>* diagnostics = nullptr,
                                 const ZeroSearchOptions& options = {});

/// Consecutive zeros become intervals; 64 interior samples confirm that u
/// keeps one sign, and any missed zero is inserted before rebuilding.
std::vector<RootInterval> build_root_intervals(std::vector<double> zeros, const FieldSource& source,
                                               double beta, const PrecisionConfig& cfg,
                                               int threads = 0,
                                               std::vector<Finding>* diagnostics = nullptr);

/// Fills endpoint v values, the inner v zero, extrema count, mu and the verdict.
/// Requires beta > 0.
RootInterval verify_peak_valley(RootInterval iv, const FieldSource& source,
                                const PrecisionConfig& cfg);

struct NormMinimum {
  double mu = 0.0;
  double mu_scaled = 0.0;
  double at = 0.0;
};

/// min of |u| + |v|/beta over the interval: 256 samples, then golden-section
/// refinement around the best one. Requires beta > 0.
NormMinimum min_norm(const RootInterval& iv, const FieldSource& source, const PrecisionConfig& cfg);

struct LagariasValue {
  mp::Real psi;             // u v_t - v u_t
  double psi_scaled = 0.0;  // psi / M^2
  /// Re(xi'/xi) = (u u_beta + v v_beta)/|xi|^2; empty when |xi| is within
  /// the error estimate of zero.
  std::optional<double> log_derivative_re;
};

/// Requires beta > 0.
LagariasValue lagarias_psi(const xi::StripPoint& p, const FieldSource& source,
                           const PrecisionConfig& cfg);

/// |v(t, beta) + int_0^beta u_t(t, r) dr| with an r_nodes Gauss-Legendre rule.
double lemma1_residual(const xi::StripPoint& p, const FieldSource& source, int r_nodes,
                       const PrecisionConfig& cfg);

struct ZeroCount {
  int count = 0;
  double main_term = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::vector<double> zeros;
};

/// Zeros of u(., 0) in (0, T] against (T ln(T/2pi) - T)/2pi, gap bound 2 ln T.
ZeroCount zero_count_check(double T, const PrecisionConfig& cfg, int threads = 0);
ZeroCount zero_count_check(const FieldSource& source, double T, const PrecisionConfig& cfg,
                           int threads = 0);

/// Minimum Lagarias value and the two derivative-norm quantities
///   first  = (|u_beta|/beta + |v_beta|) / M
///   second = (|u_bb| + |v_bb|/beta) / M
/// over a uniform t-grid for each beta.
struct GridSurvey {
  std::size_t points = 0;
  double lagarias_min_scaled = 0.0;
  double lagarias_min_beta = 0.0;
  double lagarias_min_t = 0.0;
  std::size_t lagarias_nonpositive = 0;
  double first_min = 0.0;
  double first_min_beta = 0.0;
  double first_min_t = 0.0;
  double second_min = 0.0;
  double second_min_beta = 0.0;
  double second_min_t = 0.0;
};

GridSurvey survey_grid(const FieldSource& source, const std::vector<double>& betas, double t_min,
                       double t_max, double step, const PrecisionConfig& cfg, int threads = 0);

struct CheckResult {
  bool pass = false;
  double margin = 0.0;
};

struct ScanOptions {
  /// Extra global checks: "lagarias", "lemma1", "zero_count".
  std::set<std::string> checks;
  double lagarias_step = 0.05;
  int lemma1_samples = 10;
  int lemma1_nodes = 10;
  std::uint64_t seed = 20240917;
  int threads = 0;
};

struct ScanReport {
  std::string source;
  std::vector<double> beta_list;
  double t_min = 0.0;
  double t_max = 0.0;
  PrecisionConfig config;
  std::vector<RootInterval> intervals;
  std::map<std::string, CheckResult> checks;
  std::vector<Finding> failures;
  std::vector<Finding> diagnostics;

  bool has_structural_anomaly() const;
  bool all_pass() const;
};

/// Full audit over beta_list x [t_min, t_max]. Output does not depend on the
/// number of worker threads.
ScanReport scan_range(const FieldSource& source, const std::vector<double>& beta_list, double t_min,
                      double t_max, const PrecisionConfig& cfg, const ScanOptions& options = {});

}  // namespace xiscope::scan
