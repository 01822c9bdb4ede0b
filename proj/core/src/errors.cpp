#include "specdiv/errors.hpp"

#include <cstdlib>

namespace specdiv {

long max_form_order() {
  if (const char* env = std::getenv("MAX_FORM_ORDER")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 36 * 36;
}

void check_form_order_guard(long order, const std::string& what) {
  long limit = max_form_order();
  if (order > limit) {
    throw GuardExceeded(what + ": form order " + std::to_string(order) +
                        " exceeds guard " + std::to_string(limit) +
                        " (set MAX_FORM_ORDER to override)");
  }
}

}  // namespace specdiv
