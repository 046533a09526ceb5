#pragma once

#include <string_view>
#include <vector>

#include "mochain/rational.hpp"

namespace mochain {

/// Comma-separated exact values, e.g. "4/3,5/3,2,5/2" or "-0.25, 0.5".
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace mochain
