#pragma once

#include <cstdint>
#include <cstring>
#include <string>

namespace glesim {

// FNV-1a, used for model/config fingerprints. Stable across platforms for a
// given canonical serialization, which is all the artifact format needs.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), h);
}

std::string to_hex(std::uint64_t v);

} // namespace glesim
