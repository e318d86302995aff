#pragma once

#include <string>

namespace detforge {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// Fixed-point text with the given number of decimals.
std::string format_fixed(double v, int decimals);

}  // namespace detforge
