#pragma once

#include <cstdint>

namespace qdup {

/// Search and counting limits. `count` bounds element scans (p^dim); `search` bounds
/// candidate checks in isomorphism and brute-force enumerations.
struct Budgets {
  std::uint64_t count = 1'000'000;
  std::uint64_t search = 50'000'000;
};

/// Defaults, with `count` overridden by the QDUP_BUDGET environment variable when it
/// holds a positive integer (`search` scales with it).
Budgets default_budgets();

}  // namespace qdup
