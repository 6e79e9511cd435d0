// Closed-form fixture suite: the scanner run against cosh(tau) - 1 + epsilon,
// where every quantity it reports has an exact value to compare with.
#pragma once

#include <string>
#include <vector>

#include "xiscope/sources.hpp"

namespace xiscope::scan {

struct FixtureRow {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  bool pass = false;
  /// Failure of this row reflects a peak-valley or positivity violation.
  bool structural = false;
};

/// Runs the scanner on [pi, 3 pi] at beta and at 0 and compares zeros, mu,
/// the inner v zero, the Lagarias value, the interval enlargement and the
/// parallel shift against their closed forms (tolerance 1e-5). Requires
/// 0 < beta <= 1/2 and 0 <= epsilon < 1.
std::vector<FixtureRow> fixture_suite(const SyntheticModel& model, double beta, int digits = 40);

}  // namespace xiscope::scan
