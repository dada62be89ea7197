#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cwkit/fraction.hpp"
#include "cwkit/integer.hpp"
#include "cwkit/tree.hpp"

namespace cwkit {

/**
 * The n-th left diagonal of the tree read as an affine family: element j is
 * (a*j + b) / (c*j + d), j >= 1. Element j lives at level ceil(log2 n) + j,
 * position n, so the whole family determinant satisfies a*d - b*c == -1.
 */
struct Diagonal {
  Int index;
  Int a, b, c, d;

  Fraction element(const Int& j) const {
    if (j < 1) throw std::domain_error("Diagonal: j must be >= 1");
    return Fraction(a * j + b, c * j + d);
  }

  Int determinant() const { return a * d - b * c; }

  friend bool operator==(const Diagonal& x, const Diagonal& y) = default;
};

/**
 * Left diagonal by index. L1 = 1/j and L2 = (j+1)/j are seeds; for n >= 2
 * the family splits exactly like tree children:
 *   L(2n-1) = (a j + b) / ((a+c) j + (b+d)),
 *   L(2n)   = ((a+c) j + (b+d)) / (c j + d).
 * The descent from the seed costs O(log n) big-integer additions.
 */
inline Diagonal diagonal(const Int& n) {
  if (n < 1) throw std::domain_error("diagonal: index must be >= 1");
  if (n == 1) return {1, 0, 1, 1, 0};
  // Record the left/right turns from L2 down to Ln.
  std::vector<bool> right_turns;
  Int m = n;
  while (m > 2) {
    bool odd = boost::multiprecision::bit_test(m, 0);
    right_turns.push_back(!odd);
    // L(2p-1) and L(2p) both hang under Lp
    if (odd) m += 1;
    m /= 2;
  }
  Diagonal diag{n, 1, 1, 1, 0};  // L2
  for (auto it = right_turns.rbegin(); it != right_turns.rend(); ++it) {
    if (*it) {
      diag.a += diag.c;
      diag.b += diag.d;
    } else {
      diag.c += diag.a;
      diag.d += diag.b;
    }
  }
  return diag;
}

inline Fraction diagonal_element(const Int& n, const Int& j) { return diagonal(n).element(j); }

/// The right diagonals mirror the left ones entrywise: R_n(j) = 1 / L_n(j).
inline Fraction right_diagonal_element(const Int& n, const Int& j) {
  return diagonal_element(n, j).reciprocal();
}

/**
 * Numerators of the tree's fractions in breadth-first order:
 * b_0, b_1, ... = 1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5, ...
 * Memoized; extension is serialized so concurrent readers see a consistent
 * cache.
 */
class SternSequence {
 public:
  Int at(std::uint64_t m) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (cache_.size() <= m) {
      cache_.push_back(unrank(Int(cache_.size()) + 1).num());
    }
    return cache_[m];
  }

 private:
  std::mutex mutex_;
  std::vector<Int> cache_;
};

/// b_m from the shared memo.
inline Int stern(std::uint64_t m) {
  static SternSequence seq;
  return seq.at(m);
}

/// t_n = b_(n-1) / b_n as an unreduced pair; equals the coefficient pair
/// (a, c) of diagonal(n + 1). Requires n >= 1.
inline std::pair<Int, Int> coefficient_ratio(std::uint64_t n) {
  if (n < 1) throw std::domain_error("coefficient_ratio: n must be >= 1");
  return {stern(n - 1), stern(n)};
}

/**
 * Index m with (b_(m-1), b_m) equal to the constant pair (b, d) of
 * diagonal(n + 1):
 *   k = max{ x >= 0 : n - sum_(i=0..x) 2^(floor(log2 n) - i) >= 0 },
 *   m = n + 2^(floor(log2 n) - k - 1) - sum_(i=0..k) 2^(floor(log2 n) - i).
 * When n is all-ones in binary (n = 2^t - 1) the exponent above degenerates
 * to -1 and no m exists: diagonal(n + 1) sits on the right spine, whose
 * constant pair is (1, 0). Returns nullopt exactly in that case.
 */
inline std::optional<std::uint64_t> constant_index(std::uint64_t n) {
  if (n < 1) throw std::domain_error("constant_index: n must be >= 1");
  std::uint64_t lg = 63;
  while (!(n >> lg & 1)) --lg;  // floor(log2 n)
  std::uint64_t partial = 0, k = 0;
  for (;; ++k) {
    partial += std::uint64_t{1} << (lg - k);
    if (k == lg || n < partial + (std::uint64_t{1} << (lg - k - 1))) break;
  }
  if (k == lg && n >= partial) return std::nullopt;  // n = 2^(lg+1) - 1
  return n + (std::uint64_t{1} << (lg - k - 1)) - partial;
}

/**
 * The unique j >= 1 with diagonal_element(n, j) == r, if any, solved exactly
 * from (a j + b) * q = (c j + d) * p for r = p/q.
 */
inline std::optional<Int> solve_membership(const Fraction& r, const Int& n) {
  Diagonal diag = diagonal(n);
  Int den = r.num() * diag.c - r.den() * diag.a;
  Int num = r.den() * diag.b - r.num() * diag.d;
  if (den == 0) return std::nullopt;  // r is the limit a/c, never attained
  if (num % den != 0) return std::nullopt;
  Int j = num / den;
  if (j < 1) return std::nullopt;
  return j;
}

/// Limit of the family as j grows: a/c = b_(n-2)/b_(n-1). L1 tends to 0,
/// which has no positive-fraction form, so n >= 2 is required.
inline Fraction diagonal_limit(const Int& n) {
  if (n < 2) throw std::domain_error("diagonal_limit: requires n >= 2 (L1 tends to 0)");
  Diagonal diag = diagonal(n);
  return Fraction(std::move(diag.a), std::move(diag.c));
}

}  // namespace cwkit
