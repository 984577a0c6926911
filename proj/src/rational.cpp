#include "swaplab/rational.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "swaplab/error.hpp"

namespace swaplab {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Rational pow10(long exponent) {
  Rational result(1);
  Rational ten(10);
  for (long i = 0; i < std::labs(exponent); ++i) result *= ten;
  return exponent < 0 ? Rational(1) / result : result;
}

Rational parse_integer(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  Rational value{std::string(digits)};
  return text.front() == '-' ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw ParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(text.substr(0, slash), text);
    Rational den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || std::labs(exponent) > 4000) {
      throw ParseError("bad exponent in '" + std::string(text) + "'");
    }
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = mantissa.substr(0, dot);
    std::string_view frac_part = mantissa.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw ParseError("not a rational number: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) throw ParseError("not a rational number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Rational value = Rational(digits) * pow10(exponent - frac_digits);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.str(); }

std::string format_double(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace swaplab
