#include "cliquescope/format.hpp"

#include <cmath>
#include <cstdio>

namespace cliquescope {

std::string format_number(double value) {
  char buf[64];
  if (std::isfinite(value) && value == std::trunc(value) && std::fabs(value) < 1e15) {
    // -0.0 prints as "0"
    std::snprintf(buf, sizeof buf, "%.0f", value == 0.0 ? 0.0 : value);
  } else {
    std::snprintf(buf, sizeof buf, "%.6g", value);
  }
  return buf;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value == 0.0 ? 0.0 : value);
  return buf;
}

}  // namespace cliquescope
