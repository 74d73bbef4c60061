#include "pcamix/format.hpp"

#include <cstdio>

namespace pcamix {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.15g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace pcamix
