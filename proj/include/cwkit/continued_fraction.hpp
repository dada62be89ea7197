#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cwkit/fraction.hpp"
#include "cwkit/integer.hpp"
#include "cwkit/path.hpp"
#include "cwkit/tree.hpp"

namespace cwkit {

/**
 * Canonical finite simple continued fraction [a0; a1, ..., ak] of a positive
 * rational: a0 >= 0, interior terms >= 1, and ak >= 2 when k >= 1 (the
 * [..., ak - 1, 1] alias is normalized away; [1] is the lone single-term
 * value with final term 1). The Euclidean algorithm produces exactly this
 * form.
 */
class ContinuedFraction {
 public:
  explicit ContinuedFraction(std::vector<Int> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::domain_error("ContinuedFraction: no terms");
    if (terms_[0] < 0) throw std::domain_error("ContinuedFraction: a0 must be >= 0");
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      if (terms_[i] < 1) throw std::domain_error("ContinuedFraction: interior term < 1");
    }
    if (terms_.size() == 1) {
      if (terms_[0] < 1) throw std::domain_error("ContinuedFraction: [0] is not positive");
    } else if (terms_.back() < 2) {
      throw std::domain_error("ContinuedFraction: canonical form requires final term >= 2");
    }
  }

  const std::vector<Int>& terms() const { return terms_; }

  Int digit_sum() const {
    Int s = 0;
    for (const Int& t : terms_) s += t;
    return s;
  }

  /// "[1; 2, 2]"
  std::string str() const {
    std::string out = "[" + terms_[0].str();
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      out += (i == 1 ? "; " : ", ");
      out += terms_[i].str();
    }
    out += "]";
    return out;
  }

  friend bool operator==(const ContinuedFraction& a, const ContinuedFraction& b) = default;

 private:
  std::vector<Int> terms_;
};

/// Euclidean algorithm on (num, den); the only constructor of canonical CFs.
inline ContinuedFraction to_cf(const Fraction& r) {
  Int a = r.num(), b = r.den();
  std::vector<Int> terms;
  while (b != 0) {
    terms.push_back(a / b);
    a %= b;
    std::swap(a, b);
  }
  return ContinuedFraction(std::move(terms));
}

/// Evaluates an arbitrary (not necessarily canonical) term list by back
/// substitution. Requires a0 >= 0, interior terms >= 1, and a positive value.
inline Fraction eval_cf_terms(std::span<const Int> terms) {
  if (terms.empty()) throw std::domain_error("eval_cf_terms: no terms");
  if (terms[0] < 0) throw std::domain_error("eval_cf_terms: a0 must be >= 0");
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] < 1) throw std::domain_error("eval_cf_terms: interior term < 1");
  }
  // value = p/q, starting from the innermost term
  Int p = terms.back(), q = 1;
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    std::swap(p, q);  // reciprocal
    p += terms[i] * q;
  }
  if (p < 1) throw std::domain_error("eval_cf_terms: value is not positive");
  return Fraction(std::move(p), std::move(q));  // gcd is 1 already; ctor re-checks cheaply
}

inline Fraction from_cf(const ContinuedFraction& cf) { return eval_cf_terms(cf.terms()); }

/**
 * Path <-> continued-fraction correspondence.
 *
 * Convention used throughout (validated exhaustively against parent
 * iteration): reading the path from the NODE back to the ROOT gives
 * R^(a0) L^(a1) R^(a2) ... with the final exponent a_k - 1, and zero-length
 * runs elided. The Path value exchanged here is the usual root-to-node
 * word, i.e. the above reversed. Read-off direction alternates starting
 * with R for a0; [1] maps to the empty path.
 */
inline Path cf_to_path(const ContinuedFraction& cf) {
  const std::vector<Int>& t = cf.terms();
  std::vector<Path::Run> up;  // node-to-root
  for (std::size_t i = 0; i < t.size(); ++i) {
    Dir d = (i % 2 == 0) ? Dir::R : Dir::L;
    Int e = t[i];
    if (i + 1 == t.size()) e -= 1;
    if (e == 0) continue;  // only a0 = 0 or the root's lone 1 can land here
    up.push_back({d, std::move(e)});
  }
  std::vector<Path::Run> down(up.rbegin(), up.rend());
  return Path(std::move(down));
}

inline ContinuedFraction path_to_cf(const Path& p) {
  if (p.empty()) return ContinuedFraction({Int(1)});
  Path up = p.reversed();  // node-to-root
  std::vector<Int> terms;
  if (up.runs().front().dir == Dir::L) terms.push_back(0);  // absent R^(a0) head
  for (const Path::Run& run : up.runs()) terms.push_back(run.count);
  terms.back() += 1;
  return ContinuedFraction(std::move(terms));
}

}  // namespace cwkit
