#include "xiscope/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "xiscope/errors.hpp"
#include "xiscope/gauss_legendre.hpp"
#include "xiscope/parallel.hpp"

namespace xiscope::scan {

using mp::Real;

namespace {

constexpr double kZeroWidth = 1e-9;
constexpr int kInteriorSamples = 64;
constexpr int kDenseSamples = 256;
constexpr double kNearMissScaled = 1e-3;

int sign_of(const Real& x) { return x.sign(); }

double u_at(const FieldSource& src, double beta, double t) {
  return src.sample(beta, t, 0).u.to_double();
}

// Shrinks a sign-change bracket of u below kZeroWidth.
double bisect_u(const FieldSource& src, double beta, double a, double b, int sign_a) {
  for (int it = 0; it < 200 && b - a >= kZeroWidth; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const int s = sign_of(src.sample(beta, mid, 0).u);
    if (s == 0) return mid;
    if (s == sign_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

double bisect_v(const FieldSource& src, double beta, double a, double b, int sign_a) {
  for (int it = 0; it < 200 && b - a >= kZeroWidth; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const int s = sign_of(src.sample(beta, mid, 0).v);
    if (s == 0) return mid;
    if (s == sign_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Golden-section minimisation of f on [a, b].
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

double phi_value(const FieldSample& s, double beta) {
  return (mp::abs(s.u) + mp::abs(s.v) / Real(beta)).to_double();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

void require_beta_positive(double beta, const char* op) {
  if (!(beta > 0.0 && beta <= 0.5)) {
    throw ContractError(std::string(op) + " requires 0 < beta <= 1/2, got " + fmt(beta));
  }
}

void require_range(double beta, double t_min, double t_max) {
  if (!(beta >= 0.0 && beta <= 0.5)) throw DomainError("beta must lie in [0, 1/2], got " + fmt(beta));
  if (!(std::isfinite(t_min) && std::isfinite(t_max) && t_min >= 0.0 && t_min < t_max)) {
    throw DomainError("invalid t range [" + fmt(t_min) + ", " + fmt(t_max) + "]");
  }
}

// One pass over the bracketing grid at a given grid factor.
struct GridPass {
  std::vector<double> zeros;
  std::vector<Finding> findings;
  double min_gap_ratio = std::numeric_limits<double>::infinity();
};

GridPass grid_pass(const FieldSource& src, double beta, double t_min, double t_max,
                   double grid_factor, int threads) {
  std::vector<double> ts{t_min};
  while (ts.back() < t_max) ts.push_back(std::min(t_max, ts.back() + bracket_step(ts.back(), grid_factor)));
  const std::size_t n = ts.size();

  std::vector<double> us(n);
  std::vector<int> signs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const FieldSample s = src.sample(beta, ts[i], 0);
    signs[i] = sign_of(s.u);
    us[i] = s.u.to_double();
  });

  // Per-slot results keep the merge independent of scheduling.
  std::vector<std::vector<double>> found(n);
  std::vector<std::vector<Finding>> notes(n);
  parallel_for(n, threads, [&](std::size_t i) {
    if (signs[i] == 0) {
      found[i].push_back(ts[i]);
      return;
    }
    if (i + 1 < n && signs[i + 1] != 0 && signs[i] != signs[i + 1]) {
      found[i].push_back(bisect_u(src, beta, ts[i], ts[i + 1], signs[i]));
      return;
    }
    // Same-sign local minimum of |u|: a pair of zeros may hide between grid points.
    if (i == 0 || i + 1 >= n) return;
    if (signs[i - 1] != signs[i] || signs[i + 1] != signs[i]) return;
    if (!(std::abs(us[i]) < std::abs(us[i - 1]) && std::abs(us[i]) < std::abs(us[i + 1]))) return;
    const int s0 = signs[i];
    auto signed_u = [&](double t) { return s0 * u_at(src, beta, t); };
    const auto [t_star, val] = golden_min(signed_u, ts[i - 1], ts[i + 1], kZeroWidth);
    if (val < 0.0) {
      found[i].push_back(bisect_u(src, beta, ts[i - 1], t_star, s0));
      found[i].push_back(bisect_u(src, beta, t_star, ts[i + 1], -s0));
      notes[i].push_back({"hidden_zero_pair", beta, ts[i - 1], ts[i + 1],
                          "two zeros between grid points recovered by local minimisation"});
    } else if (val / src.scale(t_star, beta) < kNearMissScaled) {
      notes[i].push_back({"near_miss", beta, t_star, t_star,
                          "|u|/M = " + fmt(val / src.scale(t_star, beta)) + " without a sign change"});
    }
  });

  GridPass out;
  for (std::size_t i = 0; i < n; ++i) {
    out.zeros.insert(out.zeros.end(), found[i].begin(), found[i].end());
    out.findings.insert(out.findings.end(), notes[i].begin(), notes[i].end());
  }
  std::sort(out.zeros.begin(), out.zeros.end());
  out.zeros.erase(std::unique(out.zeros.begin(), out.zeros.end(),
                              [](double a, double b) { return std::abs(a - b) < 2 * kZeroWidth; }),
                  out.zeros.end());
  for (std::size_t i = 1; i < out.zeros.size(); ++i) {
    const double gap = out.zeros[i] - out.zeros[i - 1];
    out.min_gap_ratio = std::min(out.min_gap_ratio, gap / bracket_step(out.zeros[i - 1], grid_factor));
  }
  return out;
}

// Accepts a refined zero only if u is small there relative to the scale.
void check_zero_tolerance(const FieldSource& src, double beta, const std::vector<double>& zeros,
                          int threads) {
  std::vector<double> residual(zeros.size());
  parallel_for(zeros.size(), threads, [&](std::size_t i) {
    residual[i] = std::abs(u_at(src, beta, zeros[i])) / src.scale(zeros[i], beta);
  });
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (residual[i] >= 1e-6) {
      throw NumericalError("zero refinement at t = " + fmt(zeros[i]) + " left |u|/M = " +
                           fmt(residual[i]));
    }
  }
}

struct DenseGrid {
  std::vector<double> ts;
  std::vector<FieldSample> samples;
};

DenseGrid dense_grid(const RootInterval& iv, const FieldSource& src, int order) {
  DenseGrid g;
  g.ts.resize(kDenseSamples);
  g.samples.reserve(kDenseSamples);
  const double h = (iv.t_right - iv.t_left) / (kDenseSamples - 1);
  for (int k = 0; k < kDenseSamples; ++k) {
    g.ts[k] = k == kDenseSamples - 1 ? iv.t_right : iv.t_left + k * h;
    g.samples.push_back(src.sample(iv.beta, g.ts[k], order));
  }
  return g;
}

NormMinimum minimise_norm(const RootInterval& iv, const FieldSource& src, const DenseGrid& g) {
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.samples.size(); ++k) {
    const double val = phi_value(g.samples[k], iv.beta);
    if (val < best_val) {
      best_val = val;
      best = k;
    }
  }
  const double a = g.ts[best == 0 ? 0 : best - 1];
  const double b = g.ts[std::min(best + 1, g.ts.size() - 1)];
  NormMinimum out{best_val, 0.0, g.ts[best]};
  if (b > a) {
    auto phi = [&](double t) { return phi_value(src.sample(iv.beta, t, 0), iv.beta); };
    const auto [t_star, val] = golden_min(phi, a, b, kZeroWidth * std::max(1.0, b));
    if (val < out.mu) {
      out.mu = val;
      out.at = t_star;
    }
  }
  out.mu_scaled = out.mu / src.scale(iv.t_left, iv.beta);
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::unverified:
      return "unverified";
    case Verdict::single_peak_ok:
      return "single_peak_ok";
    case Verdict::multi_peak_anomaly:
      return "multi_peak_anomaly";
    case Verdict::sign_anomaly:
      return "sign_anomaly";
  }
  return "unverified";
}

double bracket_step(double t, double grid_factor) {
  const double spacing = 2.0 * std::numbers::pi / std::log(std::max(t, 20.0) / (2.0 * std::numbers::pi));
  return spacing / std::max(10.0, grid_factor);
}

std::vector<double> find_u_zeros(const FieldSource& source, double beta, double t_min, double t_max,
                                 const PrecisionConfig& cfg, std::vector<Finding>* diagnostics,
                                 const ZeroSearchOptions& options) {
  require_range(beta, t_min, t_max);
  cfg.validate();
  double factor = std::max(10.0, cfg.grid_factor);
  GridPass pass = grid_pass(source, beta, t_min, t_max, factor, options.threads);
  // Spacing audit: zeros closer than two grid steps mean the grid may have
  // stepped over a cluster, so the whole range is rescanned on a finer grid.
  for (int round = 0; round < options.max_rescans && pass.min_gap_ratio < 2.0; ++round) {
    factor *= 2.0;
    if (diagnostics != nullptr) {
      diagnostics->push_back({"grid_refined", beta, t_min, t_max,
                              "zero spacing below two grid steps; grid factor raised to " + fmt(factor)});
    }
    pass = grid_pass(source, beta, t_min, t_max, factor, options.threads);
  }
  check_zero_tolerance(source, beta, pass.zeros, options.threads);
  if (diagnostics != nullptr) {
    diagnostics->insert(diagnostics->end(), pass.findings.begin(), pass.findings.end());
  }
  return pass.zeros;
}

std::vector<RootInterval> build_root_intervals(std::vector<double> zeros, const FieldSource& source,
                                               double beta, const PrecisionConfig& cfg, int threads,
                                               std::vector<Finding>* diagnostics) {
  cfg.validate();
  std::sort(zeros.begin(), zeros.end());
  zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
  constexpr int kMaxRounds = 8;
  for (int round = 0; round <= kMaxRounds; ++round) {
    if (zeros.size() < 2) return {};
    const std::size_t m = zeros.size() - 1;
    std::vector<int> mid_sign(m);
    std::vector<std::vector<double>> missing(m);
    parallel_for(m, threads, [&](std::size_t j) {
      const double a = zeros[j];
      const double b = zeros[j + 1];
      mid_sign[j] = sign_of(source.sample(beta, 0.5 * (a + b), 0).u);
      std::vector<double> ts(kInteriorSamples + 2);
      std::vector<int> ss(kInteriorSamples + 2);
      ts.front() = a;
      ts.back() = b;
      for (int k = 1; k <= kInteriorSamples; ++k) {
        ts[k] = a + (b - a) * k / (kInteriorSamples + 1);
        ss[k] = sign_of(source.sample(beta, ts[k], 0).u);
      }
      for (int k = 1; k < kInteriorSamples; ++k) {
        if (ss[k] == 0) {
          missing[j].push_back(ts[k]);
        } else if (ss[k + 1] != 0 && ss[k] != ss[k + 1]) {
          missing[j].push_back(bisect_u(source, beta, ts[k], ts[k + 1], ss[k]));
        }
      }
      if (mid_sign[j] == 0) {
        // Midpoint on a zero: take the sign of the first interior sample instead.
        for (int k = 1; k <= kInteriorSamples && mid_sign[j] == 0; ++k) mid_sign[j] = ss[k];
      }
    });
    std::vector<double> extra;
    for (std::size_t j = 0; j < m; ++j) {
      for (double z : missing[j]) {
        extra.push_back(z);
        if (diagnostics != nullptr) {
          diagnostics->push_back({"inserted_zero", beta, zeros[j], zeros[j + 1],
                                  "interior sign change at t = " + fmt(z)});
        }
      }
    }
    if (extra.empty()) {
      std::vector<RootInterval> out(m);
      for (std::size_t j = 0; j < m; ++j) {
        out[j].beta = beta;
        out[j].t_left = zeros[j];
        out[j].t_right = zeros[j + 1];
        out[j].u_sign_inside = mid_sign[j];
      }
      return out;
    }
    zeros.insert(zeros.end(), extra.begin(), extra.end());
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end(),
                            [](double a, double b) { return std::abs(a - b) < 2 * kZeroWidth; }),
                zeros.end());
  }
  throw NumericalError("root-interval audit did not settle after repeated zero insertion");
}

RootInterval verify_peak_valley(RootInterval iv, const FieldSource& source, const PrecisionConfig& cfg) {
  require_beta_positive(iv.beta, "verify_peak_valley");
  cfg.validate();
  if (!(iv.t_left < iv.t_right)) throw ContractError("root-interval needs t_left < t_right");

  const DenseGrid g = dense_grid(iv, source, 1);
  const FieldSample& left = g.samples.front();
  const FieldSample& right = g.samples.back();
  iv.v_left = left.v.to_double();
  iv.v_right = right.v.to_double();
  const int u_sign = iv.u_sign_inside;
  const bool signs_ok = u_sign != 0 && left.v.sign() == -u_sign && right.v.sign() == u_sign;

  // u-extrema: sign changes of u_t strictly inside; values within the error
  // estimate are treated as flat and skipped, so a plateau counts once.
  int extrema = 0;
  int last = 0;
  for (std::size_t k = 1; k + 1 < g.samples.size(); ++k) {
    const FieldSample& s = g.samples[k];
    const double tol = 100.0 * s.err_estimate;
    int sgn = s.u_t.sign();
    if (std::abs(s.u_t.to_double()) <= tol) sgn = 0;
    if (sgn == 0) continue;
    if (last != 0 && sgn != last) ++extrema;
    last = sgn;
  }
  iv.extrema_count = extrema;

  // v sign changes over the whole grid; the first bracket is refined.
  int v_changes = 0;
  std::optional<std::pair<std::size_t, std::size_t>> first_bracket;
  std::size_t prev = 0;
  int prev_sign = g.samples[0].v.sign();
  for (std::size_t k = 1; k < g.samples.size(); ++k) {
    const int sgn = g.samples[k].v.sign();
    if (sgn == 0) continue;
    if (prev_sign != 0 && sgn != prev_sign) {
      ++v_changes;
      if (!first_bracket) first_bracket = std::pair{prev, k};
    }
    prev_sign = sgn;
    prev = k;
  }
  iv.v_zero_count = v_changes;
  iv.v_inner_zero.reset();
  if (first_bracket) {
    const auto [a, b] = *first_bracket;
    const double z = bisect_v(source, iv.beta, g.ts[a], g.ts[b], g.samples[a].v.sign());
    if (z > iv.t_left && z < iv.t_right) iv.v_inner_zero = z;
  }

  const NormMinimum nm = minimise_norm(iv, source, g);
  iv.mu = nm.mu;
  iv.mu_scaled = nm.mu_scaled;
  iv.mu_at = nm.at;

  double err = 0.0;
  for (const auto& s : g.samples) err = std::max(err, s.err_estimate);
  iv.mu_resolved = iv.mu > 10.0 * err;

  if (!signs_ok || !iv.mu_resolved) {
    iv.verdict = Verdict::sign_anomaly;
  } else if (iv.extrema_count != 1 || iv.v_zero_count != 1 || !iv.v_inner_zero) {
    iv.verdict = Verdict::multi_peak_anomaly;
  } else {
    iv.verdict = Verdict::single_peak_ok;
  }
  return iv;
}

NormMinimum min_norm(const RootInterval& iv, const FieldSource& source, const PrecisionConfig& cfg) {
  require_beta_positive(iv.beta, "min_norm");
  cfg.validate();
  if (!(iv.t_left < iv.t_right)) throw ContractError("root-interval needs t_left < t_right");
  return minimise_norm(iv, source, dense_grid(iv, source, 0));
}

LagariasValue lagarias_psi(const xi::StripPoint& p, const FieldSource& source, const PrecisionConfig& cfg) {
  require_beta_positive(p.beta, "lagarias_psi");
  cfg.validate();
  mp::PrecisionScope scope(source.digits() + 10);
  const FieldSample s = source.sample(p.beta, p.t, 1);
  LagariasValue out;
  out.psi = s.u * s.v_t - s.v * s.u_t;
  const double m = source.scale(p.t, p.beta);
  out.psi_scaled = out.psi.to_double() / (m * m);
  const Real norm2 = s.u * s.u + s.v * s.v;
  if (norm2 > Real(s.err_estimate) * Real(s.err_estimate) && !norm2.is_zero()) {
    // u_beta = v_t and v_beta = -u_t, so the numerator equals psi.
    out.log_derivative_re = (out.psi / norm2).to_double();
  }
  return out;
}

double lemma1_residual(const xi::StripPoint& p, const FieldSource& source, int r_nodes,
                       const PrecisionConfig& cfg) {
  require_beta_positive(p.beta, "lemma1_residual");
  if (r_nodes < 4) throw ContractError("lemma1_residual needs at least 4 nodes");
  cfg.validate();
  mp::PrecisionScope scope(source.digits() + 10);
  const auto rule = gauss_legendre(r_nodes);
  Real integral(0);
  for (int i = 0; i < r_nodes; ++i) {
    const double r = (rule->nodes[i] * Real(p.beta)).to_double();
    integral += rule->weights[i] * source.sample(r, p.t, 1).u_t;
  }
  integral *= Real(p.beta);
  const Real v = source.sample(p.beta, p.t, 0).v;
  return mp::abs(v + integral).to_double();
}

ZeroCount zero_count_check(const FieldSource& source, double T, const PrecisionConfig& cfg, int threads) {
  if (!(T > 1.0)) throw DomainError("zero_count_check needs T > 1");
  ZeroCount out;
  out.zeros = find_u_zeros(source, 0.0, 0.0, T, cfg, nullptr, {threads, 3});
  out.count = static_cast<int>(out.zeros.size());
  out.main_term = (T * std::log(T / (2.0 * std::numbers::pi)) - T) / (2.0 * std::numbers::pi);
  out.gap = std::abs(out.count - out.main_term);
  out.bound = 2.0 * std::log(T);
  out.pass = out.gap <= out.bound;
  return out;
}

ZeroCount zero_count_check(double T, const PrecisionConfig& cfg, int threads) {
  const XiSource source(cfg);
  return zero_count_check(source, T, cfg, threads);
}

GridSurvey survey_grid(const FieldSource& source, const std::vector<double>& betas, double t_min,
                       double t_max, double step, const PrecisionConfig& cfg, int threads) {
  cfg.validate();
  if (!(step > 0.0)) throw DomainError("survey step must be positive");
  for (double b : betas) require_beta_positive(b, "survey_grid");
  if (!(t_min <= t_max)) throw DomainError("invalid t range");
  const auto per_beta = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  const std::size_t n = per_beta * betas.size();

  struct Point {
    double lag = 0.0;
    double first = 0.0;
    double second = 0.0;
  };
  std::vector<Point> pts(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const double beta = betas[i / per_beta];
    const double t = t_min + static_cast<double>(i % per_beta) * step;
    mp::PrecisionScope scope(source.digits() + 10);
    const FieldSample s = source.sample(beta, t, 2);
    const double m = source.scale(t, beta);
    const Real b(beta);
    const Real psi = s.u * s.v_t - s.v * s.u_t;
    pts[i].lag = psi.to_double() / (m * m);
    // |u_beta|/beta + |v_beta| with u_beta = v_t, v_beta = -u_t.
    pts[i].first = ((mp::abs(s.v_t) / b + mp::abs(s.u_t)).to_double()) / m;
    pts[i].second = ((mp::abs(s.u_bb) + mp::abs(s.v_bb) / b).to_double()) / m;
  });

  GridSurvey out;
  out.points = n;
  out.lagarias_min_scaled = out.first_min = out.second_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double beta = betas[i / per_beta];
    const double t = t_min + static_cast<double>(i % per_beta) * step;
    if (pts[i].lag <= 0.0) ++out.lagarias_nonpositive;
    if (pts[i].lag < out.lagarias_min_scaled) {
      out.lagarias_min_scaled = pts[i].lag;
      out.lagarias_min_beta = beta;
      out.lagarias_min_t = t;
    }
    if (pts[i].first < out.first_min) {
      out.first_min = pts[i].first;
      out.first_min_beta = beta;
      out.first_min_t = t;
    }
    if (pts[i].second < out.second_min) {
      out.second_min = pts[i].second;
      out.second_min_beta = beta;
      out.second_min_t = t;
    }
  }
  return out;
}

bool ScanReport::has_structural_anomaly() const {
  for (const auto& f : failures) {
    if (f.kind == "sign_anomaly" || f.kind == "multi_peak_anomaly" || f.kind == "norm_floor" ||
        f.kind == "lagarias") {
      return true;
    }
  }
  return false;
}

bool ScanReport::all_pass() const {
  if (!failures.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.pass; });
}

ScanReport scan_range(const FieldSource& source, const std::vector<double>& beta_list, double t_min,
                      double t_max, const PrecisionConfig& cfg, const ScanOptions& options) {
  cfg.validate();
  for (double b : beta_list) require_range(b, t_min, t_max);
  for (const auto& c : options.checks) {
    if (c != "lagarias" && c != "lemma1" && c != "zero_count") {
      throw ContractError("unknown scan check '" + c + "'");
    }
  }
  ScanReport report;
  report.source = source.name();
  report.beta_list = beta_list;
  report.t_min = t_min;
  report.t_max = t_max;
  report.config = cfg;
  const int threads = options.threads;

  std::vector<double> positive_betas;
  std::size_t anomalies = 0;
  double min_mu_scaled = std::numeric_limits<double>::infinity();
  for (double beta : beta_list) {
    const std::vector<double> zeros =
        find_u_zeros(source, beta, t_min, t_max, cfg, &report.diagnostics, {threads, 3});
    std::vector<RootInterval> ivs =
        build_root_intervals(zeros, source, beta, cfg, threads, &report.diagnostics);
    if (beta > 0.0) {
      positive_betas.push_back(beta);
      parallel_for(ivs.size(), threads,
                   [&](std::size_t j) { ivs[j] = verify_peak_valley(ivs[j], source, cfg); });
      for (const auto& iv : ivs) {
        min_mu_scaled = std::min(min_mu_scaled, iv.mu_scaled);
        if (iv.verdict == Verdict::single_peak_ok) continue;
        ++anomalies;
        std::ostringstream detail;
        detail << "u_sign=" << iv.u_sign_inside << " v_left=" << fmt(iv.v_left)
               << " v_right=" << fmt(iv.v_right) << " extrema=" << iv.extrema_count
               << " v_zeros=" << iv.v_zero_count << " mu=" << fmt(iv.mu);
        report.failures.push_back({to_string(iv.verdict), beta, iv.t_left, iv.t_right, detail.str()});
        if (!iv.mu_resolved) {
          report.failures.push_back({"norm_floor", beta, iv.t_left, iv.t_right, "mu = " + fmt(iv.mu)});
        }
      }
    } else {
      // beta = 0 rows are only used for zero counting; v vanishes identically there.
      for (auto& iv : ivs) iv.verdict = Verdict::unverified;
    }
    report.intervals.insert(report.intervals.end(), ivs.begin(), ivs.end());
  }

  if (!positive_betas.empty()) {
    report.checks["peak_valley"] = {anomalies == 0, static_cast<double>(anomalies)};
    if (std::isfinite(min_mu_scaled)) {
      report.checks["min_mu_scaled"] = {min_mu_scaled > 0.0, min_mu_scaled};
    }
  }

  if (options.checks.count("lagarias") != 0 && !positive_betas.empty()) {
    const GridSurvey s =
        survey_grid(source, positive_betas, t_min, t_max, options.lagarias_step, cfg, threads);
    const bool ok = s.lagarias_nonpositive == 0;
    report.checks["lagarias_min"] = {ok, s.lagarias_min_scaled};
    if (!ok) {
      report.failures.push_back({"lagarias", s.lagarias_min_beta, s.lagarias_min_t, s.lagarias_min_t,
                                 std::to_string(s.lagarias_nonpositive) +
                                     " grid points with u v_t - v u_t <= 0; minimum psi/M^2 = " +
                                     fmt(s.lagarias_min_scaled)});
    }
  }

  if (options.checks.count("lemma1") != 0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> beta_dist(0.0, 0.5);
    std::uniform_real_distribution<double> t_dist(t_min, t_max);
    std::vector<xi::StripPoint> pts;
    for (int i = 0; i < options.lemma1_samples; ++i) {
      double b = beta_dist(rng);
      if (b <= 0.0) b = 0.5;
      pts.push_back({b, t_dist(rng)});
    }
    std::vector<double> scaled(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t i) {
      scaled[i] = lemma1_residual(pts[i], source, options.lemma1_nodes, cfg) /
                  source.scale(pts[i].t, pts[i].beta);
    });
    double worst = 0.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      if (scaled[i] > worst) {
        worst = scaled[i];
        worst_i = i;
      }
    }
    const bool ok = worst < 1e-12;
    report.checks["lemma1_max_residual"] = {ok, worst};
    if (!ok) {
      report.failures.push_back({"lemma1", pts[worst_i].beta, pts[worst_i].t, pts[worst_i].t,
                                 "residual/M = " + fmt(worst)});
    }
  }

  if (options.checks.count("zero_count") != 0) {
    const ZeroCount zc = zero_count_check(source, t_max, cfg, threads);
    report.checks["count_vs_NT"] = {zc.pass, zc.gap};
    if (!zc.pass) {
      report.failures.push_back({"zero_count", 0.0, 0.0, t_max,
                                 "count " + std::to_string(zc.count) + " vs main term " +
                                     fmt(zc.main_term)});
    }
  }
  return report;
}

}  // namespace xiscope::scan
