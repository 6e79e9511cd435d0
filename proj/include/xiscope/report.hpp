// Machine-readable outputs: the JSON scan report and the CSV curve table.
// Reals are written as decimal strings with 17 significant digits, so a
// report is byte-identical across runs with the same configuration.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "xiscope/scanner.hpp"

namespace xiscope::report {

/// Decimal string with 17 significant digits ("nan"/"inf" for non-finite values).
std::string num(double x);

nlohmann::ordered_json config_json(const PrecisionConfig& cfg);
nlohmann::ordered_json to_json(const scan::ScanReport& report);

/// Serialised report text with a trailing newline.
std::string render(const scan::ScanReport& report);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws ResourceError when the path is not writable.
void write_atomic(const std::string& path, const std::string& content);

inline constexpr const char* kCurveHeader =
    "t,beta,u_scaled,v_scaled,abs_u_scaled,abs_v_over_beta_scaled,norm_scaled";

struct CurveRow {
  double t = 0.0;
  double beta = 0.0;
  double u_scaled = 0.0;
  double v_scaled = 0.0;
  double abs_u_scaled = 0.0;
  /// |v|/(beta M); on beta = 0 the limit |u_t|/M is used instead.
  double abs_v_over_beta_scaled = 0.0;
  double norm_scaled = 0.0;
};

/// `samples` rows per beta, uniform in t over [t_min, t_max] (samples >= 2).
std::vector<CurveRow> sample_curves(const scan::FieldSource& source, const std::vector<double>& betas,
                                    double t_min, double t_max, int samples, int threads = 0);

std::string curves_csv(const std::vector<CurveRow>& rows);

}  // namespace xiscope::report
