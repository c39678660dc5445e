// Copyright 2026 The wgame Authors.
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

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wgame/error.hpp"

namespace wgame {

// Exact rational number. Always kept in canonical form (gcd(p, q) = 1, q > 0).
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long n) : value_(n) {}  // NOLINT: implicit on purpose
  Rational(int n) : value_(n) {}   // NOLINT
  Rational(long p, long q) {
    if (q == 0) throw InputError("", "zero denominator");
    value_ = mpq_class(p, q);
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  // Accepts "p/q" or "p" with optional sign on p.
  static std::optional<Rational> Parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto all_digits = [](std::string_view s, bool allow_sign) {
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
        s.remove_prefix(1);
      return !s.empty() &&
             std::all_of(s.begin(), s.end(),
                         [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = text.find('/');
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos
                          ? std::string("1")
                          : std::string(text.substr(slash + 1));
    if (!all_digits(num, true) || !all_digits(den, false)) return std::nullopt;
    if (num[0] == '+') num.erase(0, 1);
    mpz_class p(num, 10), q(den, 10);
    if (q == 0) return std::nullopt;
    mpq_class v(p, q);
    v.canonicalize();
    return Rational(std::move(v));
  }

  std::string ToString() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  const mpq_class& raw() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_positive() const { return sgn(value_) > 0; }
  bool is_negative() const { return sgn(value_) < 0; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero rational");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

inline Rational Sum(const std::vector<Rational>& xs) {
  Rational s;
  for (const auto& x : xs) s += x;
  return s;
}

// Finitely supported probability over a carrier of distinct values. Weights
// are nonnegative and sum exactly to one.
template <typename X>
class RationalDistribution {
 public:
  RationalDistribution() = default;

  // Throws InputError on a malformed distribution.
  RationalDistribution(std::vector<X> carrier, std::vector<Rational> weights)
      : carrier_(std::move(carrier)), weights_(std::move(weights)) {
    if (carrier_.size() != weights_.size())
      throw InputError("", "carrier and weights differ in length");
    if (carrier_.empty()) throw InputError("", "empty distribution");
    for (std::size_t i = 0; i < carrier_.size(); ++i) {
      if (weights_[i].is_negative())
        throw InputError("", "negative weight " + weights_[i].ToString());
      for (std::size_t j = 0; j < i; ++j)
        if (carrier_[i] == carrier_[j])
          throw InputError("", "duplicate carrier entry");
    }
    Rational s = Sum(weights_);
    if (s != Rational(1))
      throw InputError("", "weights sum to " + s.ToString());
  }

  static RationalDistribution PointMass(X x) {
    return RationalDistribution({std::move(x)}, {Rational(1)});
  }

  static RationalDistribution Uniform(std::vector<X> carrier) {
    std::vector<Rational> w(carrier.size(),
                            Rational(1, static_cast<long>(carrier.size())));
    return RationalDistribution(std::move(carrier), std::move(w));
  }

  const std::vector<X>& carrier() const { return carrier_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return carrier_.size(); }

  Rational weight_of(const X& x) const {
    for (std::size_t i = 0; i < carrier_.size(); ++i)
      if (carrier_[i] == x) return weights_[i];
    return Rational(0);
  }

  friend bool operator==(const RationalDistribution& a,
                         const RationalDistribution& b) {
    for (std::size_t i = 0; i < a.carrier_.size(); ++i)
      if (a.weights_[i] != b.weight_of(a.carrier_[i])) return false;
    for (std::size_t i = 0; i < b.carrier_.size(); ++i)
      if (b.weights_[i] != a.weight_of(b.carrier_[i])) return false;
    return true;
  }

 private:
  std::vector<X> carrier_;
  std::vector<Rational> weights_;
};

}  // namespace wgame
