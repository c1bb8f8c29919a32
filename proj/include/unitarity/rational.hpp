#pragma once

// Exact rational scalars and the small amount of text I/O the rest of the
// library needs. Everything in the core path is computed with these.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unitarity {

// Expression templates off: values flow through ?:, lambdas and auto freely.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline bool is_positive_integer(const Rational& r) {
  return is_integer(r) && r > 0;
}

// Integer-valued rationals print as "p", everything else as "p/q".
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline long long to_int64(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("not an integer: " + to_string(r));
  return numerator(r).convert_to<long long>();
}

// Accepts "p", "p/q" and finite decimals such as "-0.5" or "1.25".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return fail();

  auto parse_int = [&](std::string_view digits) -> Integer {
    std::size_t i = 0;
    bool neg = false;
    if (i < digits.size() && (digits[i] == '+' || digits[i] == '-')) {
      neg = digits[i] == '-';
      ++i;
    }
    if (i == digits.size()) fail();
    Integer v = 0;
    for (; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) fail();
      v = v * 10 + (digits[i] - '0');
    }
    return neg ? Integer(-v) : v;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_int(std::string_view(s).substr(0, slash));
    Integer den = parse_int(std::string_view(s).substr(slash + 1));
    if (den == 0) fail();
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string_view whole = std::string_view(s).substr(0, dot);
    std::string_view frac = std::string_view(s).substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+'))
      whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) fail();
    Integer w = whole.empty() ? Integer(0) : parse_int(whole);
    Integer f = frac.empty() ? Integer(0) : parse_int(frac);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) fail();
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Rational value = Rational(w) + Rational(f, scale);
    return neg ? Rational(-value) : value;
  }
  return Rational(parse_int(s));
}

}  // namespace unitarity
