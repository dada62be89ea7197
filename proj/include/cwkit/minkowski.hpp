#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cwkit/continued_fraction.hpp"
#include "cwkit/diagonals.hpp"
#include "cwkit/dyadic.hpp"
#include "cwkit/fraction.hpp"
#include "cwkit/integer.hpp"
#include "cwkit/path.hpp"
#include "cwkit/tree.hpp"

namespace cwkit {

/// ?-value of a continued fraction [a0; a1, ..., am]:
///   a0 + 2 * sum_(n=1..m) (-1)^(n+1) / 2^(a1+...+an),
/// evaluated exactly as a dyadic. Accepts non-canonical term lists; both
/// aliases of a rational yield the same value.
inline Dyadic qmark_eval_terms(std::span<const Int> terms) {
  // A value's mantissa needs as many bits as the digit sum past a0, so cap
  // it rather than letting exact evaluation chase gigabytes.
  constexpr std::uint64_t kMaxFractionalBits = std::uint64_t{1} << 26;
  if (terms.empty()) throw std::domain_error("qmark_eval_terms: no terms");
  if (terms[0] < 0) throw std::domain_error("qmark_eval_terms: a0 must be >= 0");
  if (terms.size() == 1 && terms[0] == 0)
    throw std::domain_error("qmark_eval_terms: [0] is not a positive rational");
  Dyadic acc = Dyadic::from_integer(terms[0]);
  Int exp_sum = 0;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] < 1) throw std::domain_error("qmark_eval_terms: interior term < 1");
    exp_sum += terms[i];
    if (exp_sum > Int(kMaxFractionalBits))
      throw std::overflow_error(
          "qmark: continued-fraction digit sum too large for exact dyadic evaluation");
    // 2 / 2^exp_sum = 2^(1 - exp_sum); exp_sum >= 1 here
    Dyadic term = Dyadic::power_of_two(to_uint64(exp_sum - 1, "qmark exponent"));
    if (i % 2 == 1) {
      acc = acc + term;
    } else {
      acc = acc - term;  // strictly smaller than the preceding added term
    }
  }
  return acc;
}

/// Minkowski question-mark function on a positive rational, via its
/// canonical continued fraction. The result is always an exact dyadic.
inline Dyadic qmark(const Fraction& r) { return qmark_eval_terms(to_cf(r).terms()); }

/**
 * Images of a node's children, computed from the node's own image alone:
 * with x = ?(r) and n = floor(r),
 *   right child (a+b)/b  maps to 1 + x,
 *   left child  a/(a+b)  maps to 1 + x/2^(n+1) - (n+2)/2^(n+1).
 * The (r, x) pair is validated; a mismatch is a domain error.
 */
inline std::pair<Dyadic, Dyadic> qmark_children(const Fraction& r, const Dyadic& x) {
  if (qmark(r) != x) throw std::domain_error("qmark_children: x is not ?(r)");
  Dyadic right = Dyadic::from_integer(1) + x;
  std::uint64_t n = to_uint64(r.floor(), "floor(r)");
  // Assembled as (1 - (n+2)/2^(n+1)) + x/2^(n+1): every partial is >= 0.
  Dyadic left = Dyadic::from_integer(1) - Dyadic(Int(n) + 2, n + 1);
  left = left + x.scale_pow2(-static_cast<std::int64_t>(n + 1));
  return {std::move(left), std::move(right)};
}

/// ?(1/r) = (2 + a0 - x) / 2^a0 for r > 1, where x = ?(r) and a0 = floor(r).
inline Dyadic qmark_reciprocal(const Fraction& r, const Dyadic& x) {
  if (r <= Fraction(1, 1)) throw std::domain_error("qmark_reciprocal: requires r > 1");
  if (qmark(r) != x) throw std::domain_error("qmark_reciprocal: x is not ?(r)");
  std::uint64_t a0 = to_uint64(r.floor(), "floor(r)");
  Dyadic num = Dyadic::from_integer(Int(a0) + 2) - x;  // x < a0 + 1, so positive
  return num.scale_pow2(-static_cast<std::int64_t>(a0));
}

struct QmarkPathIdentities {
  bool append_r;        // ?(P R^n)       == n + ?(P)
  bool append_l;        // ?(P L^(n+1))   == ?(P L) / 2^n
  bool sandwich;        // ?(P L R^n L)   == 1 - 2^-n + 2^-(n+1) ?(P L)
  bool all() const { return append_r && append_l && sandwich; }
};

/// Checks the three path identities for a given prefix path P and n >= 1 by
/// direct evaluation of the extended paths.
inline QmarkPathIdentities qmark_path_identity_check(const Path& p, std::uint64_t n) {
  if (n < 1) throw std::domain_error("qmark_path_identity_check: n must be >= 1");
  auto extended = [&p](std::initializer_list<std::pair<Dir, Int>> suffix) {
    Path q = p;
    for (const auto& [d, c] : suffix) q.append(d, c);
    return qmark(fraction_at(q));
  };
  Dyadic qp = qmark(fraction_at(p));
  Dyadic qpl = extended({{Dir::L, 1}});

  bool append_r = extended({{Dir::R, Int(n)}}) == Dyadic::from_integer(Int(n)) + qp;
  bool append_l =
      extended({{Dir::L, Int(n) + 1}}) == qpl.scale_pow2(-static_cast<std::int64_t>(n));
  Dyadic rhs = Dyadic::from_integer(1) - Dyadic::power_of_two(n) +
               qpl.scale_pow2(-static_cast<std::int64_t>(n + 1));
  bool sandwich = extended({{Dir::L, 1}, {Dir::R, Int(n)}, {Dir::L, 1}}) == rhs;
  return {append_r, append_l, sandwich};
}

/// (sum of ?(r), sum of r) over level n. The two agree as rationals and both
/// equal 3*2^(n-2) - 1/2 for n >= 2.
inline std::pair<Dyadic, Fraction> qmark_level_sum(int n) {
  auto addf = [](const Fraction& x, const Fraction& y) { return x + y; };
  PairwiseReducer<Fraction, decltype(addf)> fsum(addf);
  Dyadic qsum;
  LevelStream s = LevelStream::first(n);
  for (;;) {
    Fraction v = s.value();
    qsum = qsum + qmark(v);
    fsum.push(std::move(v));
    if (!s.advance()) break;
  }
  return {std::move(qsum), *fsum.finish()};
}

/**
 * Affine description of ? on one diagonal: with x = ?(L1(j)) = 2^(1-j),
 *   ?(L_i(j)) = offset + x / 2^shift   for every j >= 1.
 */
struct AffineDyadicMap {
  Dyadic offset;
  std::uint64_t shift;

  Dyadic apply(const Dyadic& x) const {
    return offset + x.scale_pow2(-static_cast<std::int64_t>(shift));
  }

  friend bool operator==(const AffineDyadicMap& a, const AffineDyadicMap& b) = default;
};

/**
 * Derives the affine map of diagonal i by solving from the j = 2, 3 images
 * (j = 1 sits on the level boundary, so it is checked rather than solved
 * from), then verifies every j up to verify_depth. The affine form is an
 * internal consistency guarantee: failure throws logic_error, not a domain
 * error.
 */
inline AffineDyadicMap qmark_diagonal_map(const Int& i, std::uint64_t verify_depth = 8) {
  if (i < 1) throw std::domain_error("qmark_diagonal_map: index must be >= 1");
  Diagonal diag = diagonal(i);
  Dyadic y2 = qmark(diag.element(2));
  Dyadic y3 = qmark(diag.element(3));
  // y2 - y3 = (2^-1 - 2^-2) / 2^shift = 2^-(2 + shift)
  Dyadic delta = y2 - y3;
  if (delta.mantissa() != 1 || delta.exp() < 2)
    throw std::logic_error("qmark_diagonal_map: images of diagonal " + i.str() +
                           " are not affine in 2^(1-j)");
  AffineDyadicMap map{y2 - Dyadic::power_of_two(delta.exp() - 1), delta.exp() - 2};
  for (std::uint64_t j = 1; j <= verify_depth; ++j) {
    if (j == 2 || j == 3) continue;
    Dyadic x = Dyadic::power_of_two(j - 1);  // ?(L1(j)) = 2^(1-j)
    if (map.apply(x) != qmark(diag.element(Int(j))))
      throw std::logic_error("qmark_diagonal_map: affine form fails for diagonal " + i.str() +
                             " at j=" + std::to_string(j));
  }
  return map;
}

/**
 * Diagnostic for the closed-form candidate
 *   ?(L_i)(j) = ?(t_(i-1)) + x * 2^E,  E = floor(t_(i-1)) - floor(log2(i-1)),
 * against the observed affine map (which is ground truth). Reported, never
 * asserted: the observed data lets the exponent rule be reconciled later.
 */
struct QmarkClosedFormProbe {
  Int i;
  AffineDyadicMap observed;
  Fraction t_prev;               // t_(i-1) = b_(i-2) / b_(i-1)
  bool offset_matches;           // observed.offset == ?(t_prev)
  std::int64_t required_exponent;  // -shift: the E that would make it exact
  std::int64_t formula_exponent;   // floor(t_prev) - floor(log2(i-1))
  bool consistent() const { return offset_matches && required_exponent == formula_exponent; }
};

inline QmarkClosedFormProbe qmark_closed_formula_probe(const Int& i) {
  if (i < 2) throw std::domain_error("qmark_closed_formula_probe: requires i >= 2");
  AffineDyadicMap observed = qmark_diagonal_map(i);
  std::uint64_t m = to_uint64(i - 1, "index");
  Fraction t_prev(stern(m - 1), stern(m));
  std::uint64_t lg = bit_floor_log2(Int(m));
  std::int64_t formula_exp =
      t_prev.floor().convert_to<std::int64_t>() - static_cast<std::int64_t>(lg);
  return {
      i,
      observed,
      t_prev,
      qmark(t_prev) == observed.offset,
      -static_cast<std::int64_t>(observed.shift),
      formula_exp,
  };
}

}  // namespace cwkit
