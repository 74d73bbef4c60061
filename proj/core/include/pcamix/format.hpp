#pragma once

#include <string>

namespace pcamix {

/// Shortest-form decimal with 15 significant digits ("%.15g"): plain notation
/// for magnitudes from 1e-4 up, exponent form below. Negative zero prints as "0".
std::string format_number(double value);

}  // namespace pcamix
