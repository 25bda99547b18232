#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace branewin {

using Rational = mpq_class;

// Parses "3", "-7/2", "0". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

// Canonical form: "n" for integers, "p/q" otherwise (q > 0, gcd 1).
std::string rational_str(const Rational& q);

}  // namespace branewin
