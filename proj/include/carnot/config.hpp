#pragma once

#include <cstddef>

namespace carnot {

inline constexpr std::size_t kDefaultWorkloadCap = 4096;

// Free-algebra workload cap; CARNOT_CERT_CAP overrides the default.
std::size_t workload_cap();

// Throws CapExceeded when `work` is above the cap.
void require_workload(std::size_t work, const char* what);

// base^exp saturating at SIZE_MAX.
std::size_t saturating_pow(std::size_t base, std::size_t exp);

}  // namespace carnot
