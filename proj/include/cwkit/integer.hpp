#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cwkit {

/// Arbitrary-precision signed integer. Level-n aggregates grow like 3^n, so
/// fixed-width integers are ruled out everywhere in this library.
using Int = boost::multiprecision::cpp_int;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int pow2(std::uint64_t k) {
  Int r = 1;
  return r << k;
}

/// Floor of the integer square root.
inline Int isqrt(const Int& x) {
  if (x < 0) throw std::domain_error("isqrt: negative argument");
  return boost::multiprecision::sqrt(x);
}

inline bool is_perfect_square(const Int& x) {
  if (x < 0) return false;
  Int r = isqrt(x);
  return r * r == x;
}

/// Index of the highest set bit; requires x >= 1.
inline std::uint64_t bit_floor_log2(const Int& x) {
  if (x < 1) throw std::domain_error("bit_floor_log2: argument must be positive");
  return boost::multiprecision::msb(x);
}

/// Smallest e with 2^e >= x; requires x >= 1.
inline std::uint64_t bit_ceil_log2(const Int& x) {
  if (x < 1) throw std::domain_error("bit_ceil_log2: argument must be positive");
  if (x == 1) return 0;
  return boost::multiprecision::msb(x - 1) + 1;
}

inline std::uint64_t to_uint64(const Int& x, const char* what = "value") {
  if (x < 0 || x > Int(UINT64_MAX))
    throw std::overflow_error(std::string(what) + " out of 64-bit range");
  return x.convert_to<std::uint64_t>();
}

}  // namespace cwkit
