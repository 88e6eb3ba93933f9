#include "glesim/rng.hpp"

#include <cmath>

namespace glesim::rng {

double Key::normal(std::uint64_t step, std::uint64_t slot) const {
  const double u1 = uniform(step, 2 * slot);
  const double u2 = uniform(step, 2 * slot + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace glesim::rng
