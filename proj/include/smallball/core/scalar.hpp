#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace smallball {

using Rational = mpq_class;
using Integer = std::int64_t;

enum class ScalarMode { Float64, Rational, Integer };

const char* mode_name(ScalarMode mode);
ScalarMode parse_mode(std::string_view name);

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Float64;
  using field = double;
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Rational;
  using field = Rational;
};

template <>
struct scalar_traits<Integer> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Integer;
  using field = Rational;
};

template <class S>
concept GridScalar = requires { scalar_traits<S>::exact; };

// Scalars closed under division by two (needed by Haar analysis).
template <class S>
concept FieldScalar =
    GridScalar<S> && std::is_same_v<typename scalar_traits<S>::field, S>;

template <class S>
using field_t = typename scalar_traits<S>::field;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(Integer x) { return static_cast<double>(x); }

template <class T>
T convert(double x) {
  if constexpr (std::is_same_v<T, Integer>) {
    return static_cast<Integer>(x);
  } else {
    return T(x);
  }
}
template <class T>
T convert(const Rational& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x.get_d();
  } else if constexpr (std::is_same_v<T, Integer>) {
    return static_cast<Integer>(mpz_class(x).get_si());
  } else {
    return x;
  }
}
template <class T>
T convert(Integer x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(static_cast<long>(x));
  } else {
    return static_cast<T>(x);
  }
}

inline Rational abs_value(const Rational& x) { return Rational(abs(x)); }
inline double abs_value(double x) { return x < 0 ? -x : x; }
inline Integer abs_value(Integer x) { return x < 0 ? -x : x; }

// sgn with sgn(0) = +1.
template <class S>
int sign_of(const S& x) {
  return x < 0 ? -1 : 1;
}

std::string to_string(double x);
std::string to_string(const Rational& x);
std::string to_string(Integer x);

// Accepts "p", "p/q" and finite decimals such as "-0.125".
Rational parse_rational(std::string_view text);

// 2^k for any integer k.
Rational pow2(int k);

Rational rational_pow(const Rational& base, unsigned exponent);

}  // namespace smallball
