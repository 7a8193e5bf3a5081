#include "qdup/config.hpp"

#include <cstdlib>
#include <string>

namespace qdup {

Budgets default_budgets() {
  Budgets b;
  if (const char* env = std::getenv("QDUP_BUDGET")) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(env, &used);
      if (used == std::string(env).size() && v > 0) {
        b.count = static_cast<std::uint64_t>(v);
        b.search = b.count * 50;
      }
    } catch (const std::exception&) {
      // malformed values keep the defaults
    }
  }
  return b;
}

}  // namespace qdup
