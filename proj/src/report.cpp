#include "xiscope/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "xiscope/errors.hpp"
#include "xiscope/parallel.hpp"

namespace xiscope::report {

using nlohmann::ordered_json;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json config_json(const PrecisionConfig& cfg) {
  ordered_json j;
  j["digits"] = cfg.digits;
  j["series_eps_exponent"] = cfg.series_exponent();
  j["x_max"] = cfg.x_max ? ordered_json(num(*cfg.x_max)) : ordered_json("auto");
  j["nodes_per_halfperiod"] = cfg.nodes_per_halfperiod;
  j["grid_factor"] = num(cfg.grid_factor);
  return j;
}

namespace {

ordered_json finding_json(const scan::Finding& f) {
  ordered_json j;
  j["kind"] = f.kind;
  j["beta"] = num(f.beta);
  j["t_left"] = num(f.t_left);
  j["t_right"] = num(f.t_right);
  j["detail"] = f.detail;
  return j;
}

}  // namespace

ordered_json to_json(const scan::ScanReport& r) {
  ordered_json cfg = config_json(r.config);
  cfg["source"] = r.source;
  ordered_json betas = ordered_json::array();
  for (double b : r.beta_list) betas.push_back(num(b));
  cfg["beta_list"] = betas;
  cfg["t_min"] = num(r.t_min);
  cfg["t_max"] = num(r.t_max);

  ordered_json intervals = ordered_json::array();
  for (const auto& iv : r.intervals) {
    ordered_json j;
    j["beta"] = num(iv.beta);
    j["t_left"] = num(iv.t_left);
    j["t_right"] = num(iv.t_right);
    j["u_sign"] = iv.u_sign_inside;
    j["v_left"] = num(iv.v_left);
    j["v_right"] = num(iv.v_right);
    j["v_inner_zero"] = iv.v_inner_zero ? ordered_json(num(*iv.v_inner_zero)) : ordered_json(nullptr);
    j["mu"] = num(iv.mu);
    j["mu_scaled"] = num(iv.mu_scaled);
    j["extrema_count"] = iv.extrema_count;
    j["verdict"] = scan::to_string(iv.verdict);
    intervals.push_back(std::move(j));
  }

  ordered_json checks = ordered_json::object();
  for (const auto& [name, c] : r.checks) {
    checks[name] = ordered_json{{"pass", c.pass}, {"margin", num(c.margin)}};
  }
  ordered_json failures = ordered_json::array();
  for (const auto& f : r.failures) failures.push_back(finding_json(f));
  ordered_json diagnostics = ordered_json::array();
  for (const auto& f : r.diagnostics) diagnostics.push_back(finding_json(f));

  ordered_json out;
  out["config"] = cfg;
  out["intervals"] = intervals;
  out["checks"] = checks;
  out["failures"] = failures;
  out["diagnostics"] = diagnostics;
  return out;
}

std::string render(const scan::ScanReport& report) { return to_json(report).dump(2) + "\n"; }

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ResourceError("cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ResourceError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ResourceError("cannot move report into place at " + path);
  }
}

std::vector<CurveRow> sample_curves(const scan::FieldSource& source, const std::vector<double>& betas,
                                    double t_min, double t_max, int samples, int threads) {
  if (samples < 2) throw DomainError("curves need at least 2 samples");
  if (!(t_min < t_max)) throw DomainError("curves need t_min < t_max");
  for (double b : betas) {
    if (!(b >= 0.0 && b <= 0.5)) throw DomainError("beta must lie in [0, 1/2]");
  }
  const auto per_beta = static_cast<std::size_t>(samples);
  std::vector<CurveRow> rows(per_beta * betas.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double beta = betas[i / per_beta];
    const std::size_t k = i % per_beta;
    const double t = k + 1 == per_beta ? t_max : t_min + (t_max - t_min) * static_cast<double>(k) / (samples - 1);
    const scan::FieldSample s = source.sample(beta, t, beta > 0.0 ? 0 : 1);
    const double m = source.scale(t, beta);
    CurveRow& r = rows[i];
    r.t = t;
    r.beta = beta;
    r.u_scaled = s.u.to_double() / m;
    r.v_scaled = s.v.to_double() / m;
    r.abs_u_scaled = std::abs(r.u_scaled);
    r.abs_v_over_beta_scaled =
        beta > 0.0 ? std::abs(s.v.to_double()) / (beta * m) : std::abs(s.u_t.to_double()) / m;
    r.norm_scaled = r.abs_u_scaled + r.abs_v_over_beta_scaled;
  });
  return rows;
}

std::string curves_csv(const std::vector<CurveRow>& rows) {
  std::string out = kCurveHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += num(r.t) + ',' + num(r.beta) + ',' + num(r.u_scaled) + ',' + num(r.v_scaled) + ',' +
           num(r.abs_u_scaled) + ',' + num(r.abs_v_over_beta_scaled) + ',' + num(r.norm_scaled) + '\n';
  }
  return out;
}

}  // namespace xiscope::report
