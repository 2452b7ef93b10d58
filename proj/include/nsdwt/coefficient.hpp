#ifndef NSDWT_COEFFICIENT_HPP
#define NSDWT_COEFFICIENT_HPP

#include <boost/rational.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <sstream>
#include <string>

namespace nsdwt {

/// Exact coefficient. boost::rational normalizes to lowest terms on every
/// operation, so stored values are always reduced.
using Rational = boost::rational<std::int64_t>;

/// Coefficient modes. Each Laurent polynomial is parameterized by exactly
/// one of these; mixing them requires an explicit promote().
template <typename T>
struct coefficient_traits;

template <>
struct coefficient_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "rational";
  static double to_double(const Rational& v) { return boost::rational_cast<double>(v); }
  static Rational magnitude(const Rational& v) { return v < 0 ? -v : v; }
  static std::string format(const Rational& v) {
    std::ostringstream os;
    os << v.numerator();
    if (v.denominator() != 1) os << '/' << v.denominator();
    return os.str();
  }
};

template <>
struct coefficient_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";
  static double to_double(double v) { return v; }
  static double magnitude(double v) { return std::fabs(v); }
  static std::string format(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
  }
};

template <typename T>
concept Coefficient = requires { coefficient_traits<T>::exact; } &&
                      requires(T a, T b) {
                        { a + b } -> std::convertible_to<T>;
                        { a * b } -> std::convertible_to<T>;
                        { -a } -> std::convertible_to<T>;
                        { a == b } -> std::convertible_to<bool>;
                      };

template <Coefficient T>
bool is_zero(const T& v) {
  return v == T{0};
}

/// Explicit coefficient promotion (rational -> float). Identity for float.
template <Coefficient To, Coefficient From>
To promote_coefficient(const From& v) {
  if constexpr (std::same_as<To, From>) {
    return v;
  } else {
    static_assert(std::same_as<To, double>, "only rational -> float promotion is defined");
    return coefficient_traits<From>::to_double(v);
  }
}

}  // namespace nsdwt

#endif  // NSDWT_COEFFICIENT_HPP
