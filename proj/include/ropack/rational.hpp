// Copyright 2026 The ropack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Arbitrary-precision rationals and their text forms.

#ifndef ROPACK_RATIONAL_HPP_
#define ROPACK_RATIONAL_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ropack/core.hpp"

namespace ropack {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(long long base, long long exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// Correctly rounded for normal results (round half to even).
inline double to_double(const Rational& q) {
  if (q == 0) return 0.0;
  const bool negative = q < 0;
  BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(q));
  BigInt den = boost::multiprecision::denominator(q);
  const long long shift =
      64 - (static_cast<long long>(boost::multiprecision::msb(num)) -
            static_cast<long long>(boost::multiprecision::msb(den)));
  if (shift >= 0) {
    num <<= static_cast<unsigned>(shift);
  } else {
    den <<= static_cast<unsigned>(-shift);
  }
  BigInt quot;
  BigInt rem;
  boost::multiprecision::divide_qr(num, den, quot, rem);
  const bool sticky = rem != 0;
  const auto top = static_cast<long long>(boost::multiprecision::msb(quot));
  const long long drop = top - 52;
  BigInt mant = quot >> static_cast<unsigned>(drop);
  const BigInt low = quot & ((BigInt(1) << static_cast<unsigned>(drop)) - 1);
  const BigInt half = BigInt(1) << static_cast<unsigned>(drop - 1);
  if (low > half || (low == half && (sticky || (mant & 1) != 0))) ++mant;
  const double r = std::ldexp(static_cast<double>(static_cast<std::uint64_t>(mant)),
                              static_cast<int>(drop - shift));
  return negative ? -r : r;
}

// The exact value of a finite double.
inline Rational to_rational(double x) {
  if (!std::isfinite(x)) throw StructuralError("to_rational: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double frac = std::frexp(std::abs(x), &exp);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  Rational r(mant);
  const int e = exp - 53;
  if (e >= 0) {
    r *= Rational(BigInt(1) << e);
  } else {
    r /= Rational(BigInt(1) << -e);
  }
  return x < 0 ? -r : r;
}

// Exact decimal when the reduced denominator is 2^a 5^b, else "num/den".
inline std::string to_exact_string(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  BigInt rest = den;
  unsigned twos = 0;
  unsigned fives = 0;
  while ((rest & 1) == 0) {
    rest >>= 1;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();
  const unsigned digits = std::max(twos, fives);
  // q = num * 10^digits / den, an integer.
  BigInt scaled = num * boost::multiprecision::pow(BigInt(10), digits) / den;
  const bool negative = scaled < 0;
  std::string s = BigInt(boost::multiprecision::abs(scaled)).str();
  if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return negative ? "-" + s : s;
}

// Accepts "p/q", integers and plain decimals ("0.125", "-3.5").
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() {
    return StructuralError("cannot parse exact number '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw bad();
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw bad();
    for (std::size_t k = start; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') throw bad();
    }
    // cpp_int reads a leading 0 as an octal prefix.
    std::size_t first = start;
    while (first + 1 < s.size() && s[first] == '0') ++first;
    BigInt v(std::string(s.substr(first)));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    const std::string_view frac = text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    const BigInt whole = parse_int(digits + std::string(frac));
    return Rational(whole, boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size())));
  }
  return Rational(parse_int(text));
}

}  // namespace ropack

#endif  // ROPACK_RATIONAL_HPP_
