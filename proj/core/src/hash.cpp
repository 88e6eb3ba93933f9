#include "glesim/hash.hpp"

#include <cstdio>

namespace glesim {

std::string to_hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

} // namespace glesim
