#pragma once

#include <cstddef>
#include <string>

namespace glesim {

struct EstimateWithCI {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::string method;
  std::size_t sample_size = 0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

} // namespace glesim
