#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace recant {

using Rational = mpq_class;

// Accepts "n", "n/d" and "-n/d"; the result is canonicalized. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical text: "0", "1", "3/8".
std::string to_string(const Rational& q);

}  // namespace recant
