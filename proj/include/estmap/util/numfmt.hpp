#pragma once

#include <string>

namespace estmap::numfmt {

/// Fixed-point with `digits` decimals; "-0.00" is normalised to "0.00".
std::string fixed(double value, int digits);

/// Shortest decimal form that round-trips.
std::string shortest(double value);

}  // namespace estmap::numfmt
