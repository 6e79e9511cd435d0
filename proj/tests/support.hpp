#pragma once

#include <string>

#include "xiscope/real.hpp"

namespace testing {

/// |x - reference| with the reference parsed at the current precision.
inline double diff_to(const xiscope::mp::Real& x, const char* reference) {
  return xiscope::mp::abs(x - xiscope::mp::Real::from_string(reference)).to_double();
}

}  // namespace testing
