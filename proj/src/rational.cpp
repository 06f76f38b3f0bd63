#include "peg/rational.hpp"

#include "peg/errors.hpp"

namespace peg {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  for (char c : text) {
    if (!(c == '/' || c == '-' || c == '+' || (c >= '0' && c <= '9'))) {
      throw ParseError("bad rational literal '" + text + "' (decimal-free num/den expected)");
    }
  }
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal '" + text + "'");
  }
}

std::string to_frac(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.template convert_to<double>(); }

Rational floor_to_multiple(const Rational& r, const Rational& step) {
  BigInt q;
  Rational ratio = r / step;
  // floor for possibly negative ratios
  BigInt n = numerator(ratio), d = denominator(ratio);
  q = n / d;
  if (q * d != n && n < 0) q -= 1;
  return Rational(q) * step;
}

}  // namespace peg
