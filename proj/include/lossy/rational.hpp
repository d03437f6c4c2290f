#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace lossy {

using Rational = mpq_class;

/// Always "num/den", including integers ("2/1"), so reports never mix formats.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);

std::int64_t floor_to_int(const Rational& q);
std::int64_t ceil_to_int(const Rational& q);

double to_double(const Rational& q);

}  // namespace lossy
