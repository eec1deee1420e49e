#include "hiercache/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace hiercache {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty integer");
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) {
    throw std::invalid_argument("missing digits");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("bad digit in '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(trim(text.substr(0, slash)));
    const BigInt den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) {
      throw std::invalid_argument("zero denominator");
    }
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) {
      throw std::invalid_argument("bad decimal");
    }
    const BigInt int_part = whole.empty() ? BigInt(0) : parse_integer(whole);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt frac_part = frac.empty() ? BigInt(0) : parse_integer(frac);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) {
      throw std::invalid_argument("bad decimal");
    }
    Rational value(int_part * scale + frac_part, scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text));
}

std::string to_fraction_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& value, int places) {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  const bool negative = num < 0;
  const BigInt abs_num = negative ? BigInt(-num) : num;
  // round half away from zero
  BigInt scaled = (abs_num * scale * 2 + den) / (den * 2);
  const BigInt int_part = scaled / scale;
  const BigInt frac_part = scaled % scale;
  std::string out = (negative && scaled != 0) ? "-" : "";
  out += int_part.str();
  if (places > 0) {
    std::string frac = frac_part.str();
    out += '.';
    out += std::string(static_cast<std::size_t>(places) - frac.size(), '0');
    out += frac;
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational factor = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= factor;
    factor *= factor;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace hiercache
