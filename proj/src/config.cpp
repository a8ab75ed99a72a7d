#include "carnot/config.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "carnot/error.hpp"

namespace carnot {

std::size_t workload_cap() {
  if (const char* env = std::getenv("CARNOT_CERT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultWorkloadCap;
}

void require_workload(std::size_t work, const char* what) {
  const std::size_t cap = workload_cap();
  if (work > cap)
    throw Error(ErrorKind::CapExceeded, std::string(what) + ": workload " + std::to_string(work) +
                                            " exceeds cap " + std::to_string(cap) +
                                            " (set CARNOT_CERT_CAP to raise it)");
}

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base)
      return std::numeric_limits<std::size_t>::max();
    out *= base;
  }
  return out;
}

}  // namespace carnot
