#include "twistcalc/numeric.hpp"

#include "twistcalc/errors.hpp"

#include <cctype>

namespace twistcalc {

namespace {

bool looks_like_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Int parse_integer(std::string_view text) {
  if (!looks_like_integer(text)) {
    throw ParseError("not an integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Int(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Int num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw ParseError("sign in denominator: '" + std::string(text) + "'");
  }
  Int den = parse_integer(den_text);
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Int& x) { return x.get_str(10); }

std::string to_string(const Rational& x) { return x.get_str(10); }

Int abs_value(const Int& x) { return abs(x); }

}  // namespace twistcalc
