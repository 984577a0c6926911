#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace swaplab {

/// Exact rational scalar. Expression templates are disabled so the type
/// composes cleanly with Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "p/q", a signed integer, or a decimal such as "1.25" or "-3e-2".
/// Decimals are converted exactly (1.1 -> 11/10).
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

/// Converts between the scalar types used by templated kernels.
template <typename To>
To scalar_cast(const Rational& value) {
  if constexpr (std::is_same_v<To, Rational>) {
    return value;
  } else {
    return value.convert_to<To>();
  }
}

template <typename To>
To scalar_cast(double value) {
  return To(value);
}

/// Shortest round-trip text for doubles ("%.17g" trimmed), used by every CSV
/// and JSON writer so that reruns are byte-identical.
std::string format_double(double value);

inline std::string format_scalar(const Rational& v) { return to_string(v); }
inline std::string format_scalar(double v) { return format_double(v); }
inline std::string format_scalar(std::int64_t v) { return std::to_string(v); }

}  // namespace swaplab
