#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

#include "cwkit/integer.hpp"
#include "cwkit/reduce.hpp"

namespace cwkit {

/**
 * Positive rational in lowest terms. Immutable value type: every constructor
 * normalizes, so gcd(num, den) == 1 and num, den >= 1 hold unconditionally.
 */
class Fraction {
 public:
  Fraction() : num_(1), den_(1) {}

  Fraction(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_ < 1 || den_ < 1)
      throw std::domain_error("Fraction: parts must be positive, got " + num_.str() + "/" +
                              den_.str());
    Int g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  /// Bypasses reduction for values known to be in lowest terms already
  /// (children of a reduced fraction are reduced; this is the hot path of
  /// level streaming).
  static Fraction from_reduced(Int num, Int den) {
    assert(num >= 1 && den >= 1 && gcd(num, den) == 1);
    Fraction f;
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    return f;
  }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }

  Int floor() const { return num_ / den_; }

  Fraction reciprocal() const { return from_reduced(den_, num_); }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
  friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.num_, a.den_ * b.den_);
  }

  std::string str() const { return num_.str() + "/" + den_.str(); }

 private:
  Int num_;
  Int den_;
};

/// |a - b| as a positive fraction; the operands must differ.
inline Fraction abs_diff(const Fraction& a, const Fraction& b) {
  Int cross = a.num() * b.den() - b.num() * a.den();
  if (cross == 0) throw std::domain_error("abs_diff: arguments are equal");
  if (cross < 0) cross = -cross;
  return Fraction(cross, a.den() * b.den());
}

/// Exact reduced sum of a nonempty sequence, accumulated pairwise so
/// intermediate numerators/denominators stay balanced.
template <class Range>
Fraction fraction_sum_exact(const Range& items) {
  auto add = [](const Fraction& x, const Fraction& y) { return x + y; };
  PairwiseReducer<Fraction, decltype(add)> acc(add);
  for (const Fraction& f : items) acc.push(f);
  auto total = acc.finish();
  if (!total) throw std::domain_error("fraction_sum_exact: empty sequence");
  return *total;
}

}  // namespace cwkit
