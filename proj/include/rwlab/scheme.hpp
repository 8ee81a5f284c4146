// scheme.hpp - edge-weighting scheme identifiers.
#pragma once

#include <string>
#include <string_view>

namespace rwlab {

/// uniform: w = 1; ikeda: w = 1/sqrt(d(u) d(v)); mindeg: w = 1/min(d(u), d(v)).
enum class Scheme { uniform, ikeda, mindeg };

std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view text);

}  // namespace rwlab
