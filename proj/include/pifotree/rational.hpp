// Copyright 2026 The pifotree authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pifotree/errors.hpp"

namespace pifotree {

// Exact non-negative rational number with 64-bit numerator and denominator.
// Always stored in lowest terms with a positive denominator, so equal values
// have equal representations. Intermediate products are computed in 128 bits;
// results that do not fit throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value)  // NOLINT: implicit from integers
      : num_(value), den_(1) {
    if (value < 0) throw std::domain_error("Rational: negative value");
  }
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (num < 0 || den < 0) throw std::domain_error("Rational: negative value");
    assign(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend bool operator==(const Rational&, const Rational&) = default;

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ +
                         static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  // Throws std::domain_error when the result would be negative.
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a < b) throw std::domain_error("Rational: negative difference");
    return from_wide(static_cast<__int128>(a.num_) * b.den_ -
                         static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_,
                     static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  // Smallest integer >= this value.
  std::int64_t ceil() const { return num_ / den_ + (num_ % den_ != 0 ? 1 : 0); }

  // "7" or "7/2".
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Decimal rendering. Exact when the denominator has no prime factors other
  // than 2 and 5; otherwise rounded half-up to `max_digits` fractional digits.
  std::string to_decimal(int max_digits = 9) const {
    std::string out = std::to_string(num_ / den_);
    __int128 rem = num_ % den_;
    if (rem == 0) return out;
    std::string frac;
    for (int i = 0; i < max_digits && rem != 0; ++i) {
      rem *= 10;
      frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den_)));
      rem %= den_;
    }
    if (rem != 0 && rem * 2 >= den_) {
      // Round up, propagating carries into the integer part if needed.
      int i = static_cast<int>(frac.size()) - 1;
      while (i >= 0 && frac[i] == '9') frac[i--] = '0';
      if (i >= 0) {
        ++frac[i];
      } else {
        out = std::to_string(num_ / den_ + 1);
      }
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return frac.empty() ? out : out + "." + frac;
  }

  // Accepts "12", "3/4" and "0.125"; surrounding whitespace is not allowed.
  static Rational parse(std::string_view text) {
    const auto fail = [&]() -> ParseError {
      return ParseError("invalid number '" + std::string(text) + "'");
    };
    if (text.empty()) throw fail();
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
      const std::int64_t n = parse_int(text.substr(0, slash), fail);
      const std::int64_t d = parse_int(text.substr(slash + 1), fail);
      if (d == 0) throw fail();
      return Rational(n, d);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      const std::string_view whole = text.substr(0, dot);
      const std::string_view frac = text.substr(dot + 1);
      if (frac.empty() || frac.size() > 18) throw fail();
      const std::int64_t w = whole.empty() ? 0 : parse_int(whole, fail);
      const std::int64_t f = parse_int(frac, fail);
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      return Rational(w) + Rational(f, scale);
    }
    return Rational(parse_int(text, fail));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  template <class Fail>
  static std::int64_t parse_int(std::string_view s, const Fail& fail) {
    std::int64_t v = 0;
    if (s.empty() || s.front() == '-' || s.front() == '+') throw fail();
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw fail();
    return v;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 num, __int128 den) {
    const __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (num > kMax || den > kMax) {
      throw std::overflow_error("Rational: result out of 64-bit range");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Ranks are exact so that weighted virtual-time arithmetic compares without
// rounding jitter. Lower ranks are served first.
using Rank = Rational;

// Simulation timestamps, in seconds.
using Time = Rational;

}  // namespace pifotree
