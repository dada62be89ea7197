#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "cwkit/fraction.hpp"
#include "cwkit/integer.hpp"

namespace cwkit {

/**
 * Exact nonnegative dyadic rational mantissa / 2^exp, normalized so that
 * exp == 0 or the mantissa is odd (zero is stored as 0/2^0).
 *
 * Subtraction below zero is a domain error rather than a sign flip: every
 * quantity this type carries is nonnegative by construction, so a negative
 * intermediate is a bug that should fail loudly.
 */
class Dyadic {
 public:
  Dyadic() : mantissa_(0), exp_(0) {}

  Dyadic(Int mantissa, std::uint64_t exp) : mantissa_(std::move(mantissa)), exp_(exp) {
    if (mantissa_ < 0) throw std::domain_error("Dyadic: negative mantissa");
    normalize();
  }

  static Dyadic from_integer(Int n) { return Dyadic(std::move(n), 0); }

  /// 2^(-e)
  static Dyadic power_of_two(std::uint64_t e) { return Dyadic(1, e); }

  const Int& mantissa() const { return mantissa_; }
  std::uint64_t exp() const { return exp_; }
  bool is_zero() const { return mantissa_ == 0; }

  Int floor() const { return mantissa_ >> exp_; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    std::uint64_t e = std::max(a.exp_, b.exp_);
    return Dyadic((a.mantissa_ << (e - a.exp_)) + (b.mantissa_ << (e - b.exp_)), e);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    std::uint64_t e = std::max(a.exp_, b.exp_);
    Int m = (a.mantissa_ << (e - a.exp_)) - (b.mantissa_ << (e - b.exp_));
    if (m < 0) throw std::domain_error("Dyadic: subtraction underflow");
    return Dyadic(std::move(m), e);
  }

  /// Exact multiplication by 2^shift (shift may be negative).
  Dyadic scale_pow2(std::int64_t shift) const {
    if (shift >= 0) {
      auto s = static_cast<std::uint64_t>(shift);
      if (exp_ >= s) return Dyadic(mantissa_, exp_ - s);
      return Dyadic(mantissa_ << (s - exp_), 0);
    }
    return Dyadic(mantissa_, exp_ + static_cast<std::uint64_t>(-shift));
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.mantissa_ == b.mantissa_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    std::uint64_t e = std::max(a.exp_, b.exp_);
    return (a.mantissa_ << (e - a.exp_)) < (b.mantissa_ << (e - b.exp_));
  }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

  /// Conversion to Fraction; the value must be nonzero (fractions are positive).
  Fraction to_fraction() const {
    if (mantissa_ == 0) throw std::domain_error("Dyadic: zero has no Fraction form");
    return Fraction::from_reduced(mantissa_, pow2(exp_));
  }

  /// Lowest-terms rendering: "3/4", "5/2", "1", "0".
  std::string str() const {
    if (exp_ == 0) return mantissa_.str();
    return mantissa_.str() + "/" + pow2(exp_).str();
  }

 private:
  void normalize() {
    if (mantissa_ == 0) {
      exp_ = 0;
      return;
    }
    std::uint64_t tz = boost::multiprecision::lsb(mantissa_);
    std::uint64_t drop = std::min(tz, exp_);
    if (drop > 0) {
      mantissa_ >>= drop;
      exp_ -= drop;
    }
  }

  Int mantissa_;
  std::uint64_t exp_;
};

}  // namespace cwkit
