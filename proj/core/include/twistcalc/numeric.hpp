#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace twistcalc {

using Int = mpz_class;
using Rational = mpq_class;

/// Parses a decimal integer ("-12") or fraction ("3/4"), canonicalized.
Rational parse_rational(std::string_view text);
Int parse_integer(std::string_view text);

std::string to_string(const Int& x);
std::string to_string(const Rational& x);

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

Int abs_value(const Int& x);

}  // namespace twistcalc
