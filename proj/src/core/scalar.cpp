#include "smallball/core/scalar.hpp"

#include <cstdio>

#include "smallball/core/error.hpp"

namespace smallball {

const char* mode_name(ScalarMode mode) {
  switch (mode) {
    case ScalarMode::Float64:
      return "float64";
    case ScalarMode::Rational:
      return "rational";
    case ScalarMode::Integer:
      return "integer";
  }
  return "unknown";
}

ScalarMode parse_mode(std::string_view name) {
  if (name == "float64") return ScalarMode::Float64;
  if (name == "rational") return ScalarMode::Rational;
  if (name == "integer") return ScalarMode::Integer;
  throw FormatError("unknown scalar mode: " + std::string(name));
}

std::string to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(Integer x) { return std::to_string(x); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw FormatError("empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw FormatError("bad rational: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t places = s.size() - dot - 1;
    mpz_class num;
    if (num.set_str(digits == "-" || digits.empty() ? "0" : digits, 10) != 0)
      throw FormatError("bad decimal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, places);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw FormatError("bad rational: " + s);
  if (q.get_den() == 0) throw FormatError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Rational pow2(int k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rational(p);
  Rational q(1, p);
  q.canonicalize();
  return q;
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace smallball
