#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "cwkit/continued_fraction.hpp"
#include "cwkit/diagonals.hpp"
#include "cwkit/fraction.hpp"
#include "cwkit/minkowski.hpp"
#include "cwkit/render.hpp"
#include "cwkit/tree.hpp"

namespace cwkit {

struct VerifyOptions {
  int depth = 10;
  int qmark_depth = 14;  // cap for the exhaustive ?-walks, which cost a CF per node
  bool seed_check = false;
  int jobs = 1;  // checks are pure, so they may run concurrently; the report
                 // order is the registry order either way
};

struct CheckResult {
  std::uint64_t instances = 0;
  std::optional<std::string> counterexample;
  bool passed() const { return !counterexample.has_value(); }
};

struct IdentityCheck {
  const char* name;
  const char* statement;
  CheckResult (*run)(const VerifyOptions&);
};

namespace verify_detail {

inline std::string node_ref(int level, std::uint64_t pos) {
  return "level " + std::to_string(level) + ", position " + std::to_string(pos);
}

// Walks levels 1..depth; fn(level, stream) is called once per node and
// returns an empty optional or a counterexample.
template <class Fn>
CheckResult for_each_node(int depth, CheckResult res, Fn fn) {
  for (int n = 1; n <= depth; ++n) {
    LevelStream s = LevelStream::first(n);
    for (;;) {
      if (auto bad = fn(n, s)) {
        res.counterexample = std::move(bad);
        return res;
      }
      ++res.instances;
      if (!s.advance()) break;
    }
  }
  return res;
}

inline CheckResult check_reduced_form(const VerifyOptions& o) {
  return for_each_node(o.depth, {}, [](int n, const LevelStream& s) -> std::optional<std::string> {
    if (gcd(s.value_num(), s.value_den()) != 1)
      return node_ref(n, s.position()) + ": " + s.value().str() + " is not reduced";
    return std::nullopt;
  });
}

inline CheckResult check_uniqueness(const VerifyOptions& o) {
  CheckResult res;
  std::unordered_set<std::uint64_t> seen;  // num << 32 | den; parts stay tiny at these depths
  seen.reserve(std::size_t{2} << std::min(o.depth, 22));
  auto key = [](const Int& num, const Int& den) {
    return (to_uint64(num) << 32) | to_uint64(den);
  };
  for (int n = 1; n <= o.depth; ++n) {
    LevelStream s = LevelStream::first(n);
    for (;;) {
      if (!seen.insert(key(s.value_num(), s.value_den())).second) {
        res.counterexample = node_ref(n, s.position()) + ": " + s.value().str() + " repeats";
        return res;
      }
      ++res.instances;
      if (!s.advance()) break;
    }
  }
  // Small rationals appear within the first `depth` levels exactly when their
  // continued-fraction digit sum is at most `depth`.
  for (std::uint64_t p = 1; p <= 40; ++p) {
    for (std::uint64_t q = 1; q <= 40; ++q) {
      if (gcd(Int(p), Int(q)) != 1) continue;
      Fraction r(p, q);
      bool expect = level_of(r) <= o.depth;
      if (seen.contains(key(r.num(), r.den())) != expect) {
        res.counterexample = r.str() + (expect ? " missing from" : " unexpectedly in") +
                             " levels 1.." + std::to_string(o.depth);
        return res;
      }
      ++res.instances;
    }
  }
  return res;
}

inline CheckResult check_adjacent_denominator(const VerifyOptions& o) {
  CheckResult res;
  for (int n = 2; n <= o.depth; ++n) {
    LevelStream s = LevelStream::first(n);
    Int prev_den = s.value_den();
    while (s.advance()) {
      if (s.value_num() != prev_den) {
        res.counterexample = node_ref(n, s.position()) + ": numerator " + s.value_num().str() +
                             " != previous denominator " + prev_den.str();
        return res;
      }
      prev_den = s.value_den();
      ++res.instances;
    }
  }
  return res;
}

inline CheckResult check_reciprocal_symmetry(const VerifyOptions& o) {
  CheckResult res;
  for (int n = 1; n <= o.depth; ++n) {
    LevelStream fwd = LevelStream::first(n);
    LevelStream rev = LevelStream::last(n);
    std::uint64_t half = (fwd.size() + 1) / 2;
    for (std::uint64_t j = 1; j <= half; ++j) {
      if (fwd.value_num() != rev.value_den() || fwd.value_den() != rev.value_num()) {
        res.counterexample = node_ref(n, j) + ": " + fwd.value().str() +
                             " is not the reciprocal of position " +
                             std::to_string(rev.position());
        return res;
      }
      ++res.instances;
      fwd.advance();
      rev.retreat();
    }
  }
  return res;
}

inline CheckResult check_child_product(const VerifyOptions& o) {
  return for_each_node(std::max(o.depth - 1, 0), {},
                       [](int n, const LevelStream& s) -> std::optional<std::string> {
                         Fraction r = s.value();
                         auto [left, right] = children(r);
                         if (left * right != r)
                           return node_ref(n, s.position()) + ": " + r.str() +
                                  " != product of its children";
                         return std::nullopt;
                       });
}

inline CheckResult check_level_product(const VerifyOptions& o) {
  CheckResult res;
  auto mul = [](const Int& x, const Int& y) { return Int(x * y); };
  for (int n = 1; n <= o.depth; ++n) {
    PairwiseReducer<Int, decltype(mul)> nums(mul), dens(mul);
    LevelStream s = LevelStream::first(n);
    for (;;) {
      nums.push(s.value_num());
      dens.push(s.value_den());
      if (!s.advance()) break;
    }
    if (*nums.finish() != *dens.finish()) {
      res.counterexample = "level " + std::to_string(n) + ": product != 1";
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_simplicity_sum(const VerifyOptions& o) {
  CheckResult res;
  auto add = [](const Fraction& x, const Fraction& y) { return x + y; };
  for (int n = 1; n <= o.depth; ++n) {
    PairwiseReducer<Fraction, decltype(add)> sum(add);
    LevelStream s = LevelStream::first(n);
    for (;;) {
      sum.push(Fraction::from_reduced(1, s.value_num() * s.value_den()));
      if (!s.advance()) break;
    }
    if (Fraction total = *sum.finish(); total != Fraction(1, 1)) {
      res.counterexample = "level " + std::to_string(n) + ": simplicity sum " + total.str();
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_complexity_square(const VerifyOptions& o) {
  CheckResult res;
  auto mul = [](const Int& x, const Int& y) { return Int(x * y); };
  // the integer square root above level 16 costs minutes; deeper levels add
  // nothing the shallow ones do not already exercise
  for (int n = 1; n <= std::min(o.depth, 16); ++n) {
    PairwiseReducer<Int, decltype(mul)> prod(mul);
    LevelStream s = LevelStream::first(n);
    for (;;) {
      prod.push(s.value_num() * s.value_den());
      if (!s.advance()) break;
    }
    if (!is_perfect_square(*prod.finish())) {
      res.counterexample = "level " + std::to_string(n) + ": complexity product is not a square";
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_trace_sum(const VerifyOptions& o) {
  CheckResult res;
  Int pow3 = 1;
  for (int n = 1; n <= o.depth; ++n) {
    Int total = 0;
    LevelStream s = LevelStream::first(n);
    for (;;) {
      total += s.value_num() + s.value_den();
      if (!s.advance()) break;
    }
    if (total != 2 * pow3) {
      res.counterexample =
          "level " + std::to_string(n) + ": trace sum " + total.str() + " != 2*3^(n-1)";
      return res;
    }
    ++res.instances;
    pow3 *= 3;
  }
  return res;
}

inline CheckResult check_complexity_trace(const VerifyOptions& o) {
  CheckResult res;
  Int prev_sq = 0;
  for (int n = 1; n <= o.depth; ++n) {
    Int cx = 0, sq = 0;
    LevelStream s = LevelStream::first(n);
    for (;;) {
      cx += s.value_num() * s.value_den();
      Int t = s.value_num() + s.value_den();
      sq += t * t;
      if (!s.advance()) break;
    }
    if (n >= 2) {
      if (cx != prev_sq) {
        res.counterexample = "level " + std::to_string(n) + ": complexity sum " + cx.str() +
                             " != previous level's trace-square sum " + prev_sq.str();
        return res;
      }
      ++res.instances;
    }
    prev_sq = sq;
  }
  return res;
}

inline CheckResult check_level_sum(const VerifyOptions& o) {
  CheckResult res;
  auto add = [](const Fraction& x, const Fraction& y) { return x + y; };
  for (int n = 1; n <= o.depth; ++n) {
    PairwiseReducer<Fraction, decltype(add)> sum(add);
    LevelStream s = LevelStream::first(n);
    for (;;) {
      sum.push(s.value());
      if (!s.advance()) break;
    }
    Fraction total = *sum.finish();
    Fraction expect =
        n == 1 ? Fraction(1, 1) : Fraction(3 * pow2(static_cast<std::uint64_t>(n - 1)) - 1, 2);
    if (total != expect) {
      res.counterexample = "level " + std::to_string(n) + ": sum " + total.str() + " != " +
                           expect.str();
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_path_roundtrip(const VerifyOptions& o) {
  return for_each_node(o.depth, {}, [](int n, const LevelStream& s) -> std::optional<std::string> {
    Fraction r = s.value();
    Path p = path_of(r);
    if (p.length() != n - 1)
      return node_ref(n, s.position()) + ": path length != level - 1";
    if (fraction_at(p) != r)
      return node_ref(n, s.position()) + ": fraction_at(path_of(r)) != r";
    return std::nullopt;
  });
}

inline CheckResult check_rank_roundtrip(const VerifyOptions& o) {
  CheckResult res;
  Int rank = 0;
  for (int n = 1; n <= o.depth; ++n) {
    LevelStream s = LevelStream::first(n);
    for (;;) {
      ++rank;
      Fraction r = s.value();
      if (rank_of(r) != rank) {
        res.counterexample = node_ref(n, s.position()) + ": rank_of(" + r.str() + ") != " +
                             rank.str();
        return res;
      }
      if (unrank(rank) != r) {
        res.counterexample = "unrank(" + rank.str() + ") != " + r.str();
        return res;
      }
      ++res.instances;
      if (!s.advance()) break;
    }
  }
  return res;
}

inline CheckResult check_digit_sum(const VerifyOptions& o) {
  return for_each_node(o.depth, {}, [](int n, const LevelStream& s) -> std::optional<std::string> {
    if (to_cf(s.value()).digit_sum() != n)
      return node_ref(n, s.position()) + ": digit sum of " + to_cf(s.value()).str() + " != " +
             std::to_string(n);
    return std::nullopt;
  });
}

inline CheckResult check_cf_roundtrip(const VerifyOptions& o) {
  CheckResult res = for_each_node(
      o.depth, {}, [](int n, const LevelStream& s) -> std::optional<std::string> {
        if (from_cf(to_cf(s.value())) != s.value())
          return node_ref(n, s.position()) + ": from_cf(to_cf(r)) != r";
        return std::nullopt;
      });
  if (!res.passed()) return res;
  std::mt19937_64 rng(20240902);
  for (int iter = 0; iter < 200; ++iter) {
    Fraction r(rng() % 1'000'000 + 1, rng() % 1'000'000 + 1);
    if (from_cf(to_cf(r)) != r) {
      res.counterexample = "from_cf(to_cf(" + r.str() + ")) != it";
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_cf_path(const VerifyOptions& o) {
  return for_each_node(o.depth, {}, [](int n, const LevelStream& s) -> std::optional<std::string> {
    Fraction r = s.value();
    Path p = path_of(r);
    ContinuedFraction c = to_cf(r);
    if (cf_to_path(c) != p)
      return node_ref(n, s.position()) + ": cf_to_path(" + c.str() + ") != path_of(" + r.str() +
             ")";
    if (path_to_cf(p) != c)
      return node_ref(n, s.position()) + ": path_to_cf(path_of(r)) != to_cf(r)";
    return std::nullopt;
  });
}

inline CheckResult check_cf_reciprocal(const VerifyOptions& o) {
  return for_each_node(o.depth, {}, [](int n, const LevelStream& s) -> std::optional<std::string> {
    Fraction r = s.value();
    if (r <= Fraction(1, 1)) return std::nullopt;
    std::vector<Int> expect{0};
    ContinuedFraction c = to_cf(r);
    expect.insert(expect.end(), c.terms().begin(), c.terms().end());
    if (to_cf(r.reciprocal()).terms() != expect)
      return node_ref(n, s.position()) + ": to_cf(1/r) != [0] ++ to_cf(r) for r = " + r.str();
    return std::nullopt;
  });
}

inline CheckResult check_diagonal_determinant(const VerifyOptions& o) {
  CheckResult res;
  std::uint64_t bound =
      o.depth >= 17 ? 100000 : (std::uint64_t{1} << o.depth);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (diagonal(Int(n)).determinant() != -1) {
      res.counterexample = "diagonal " + std::to_string(n) + ": ad - bc != -1";
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_diagonal_column(const VerifyOptions& o) {
  return for_each_node(o.depth, {}, [](int n, const LevelStream& s) -> std::optional<std::string> {
    Int pos(s.position());
    Int j = Int(n) - Int(bit_ceil_log2(pos));
    if (diagonal_element(pos, j) != s.value())
      return node_ref(n, s.position()) + ": diagonal " + pos.str() + " element " + j.str() +
             " != " + s.value().str();
    return std::nullopt;
  });
}

inline CheckResult check_stern_structure(const VerifyOptions& o) {
  CheckResult res;
  std::uint64_t bound = std::min<std::uint64_t>(std::uint64_t{1} << o.depth, 1024);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    Diagonal d = diagonal(Int(n) + 1);
    auto [cnum, cden] = coefficient_ratio(n);
    if (d.a != cnum || d.c != cden) {
      res.counterexample = "diagonal " + std::to_string(n + 1) + ": coefficient pair != (b_" +
                           std::to_string(n - 1) + ", b_" + std::to_string(n) + ")";
      return res;
    }
    ++res.instances;
    if (n < 2) continue;
    if (auto m = constant_index(n)) {
      if (d.b != stern(*m - 1) || d.d != stern(*m)) {
        res.counterexample = "diagonal " + std::to_string(n + 1) + ": constant pair != (b_" +
                             std::to_string(*m - 1) + ", b_" + std::to_string(*m) + ")";
        return res;
      }
    } else if (d.b != 1 || d.d != 0) {
      res.counterexample = "diagonal " + std::to_string(n + 1) +
                           ": spine constants expected (1, 0)";
      return res;
    }
    ++res.instances;
  }
  // diatomic recurrence as an independent route to the same sequence
  for (std::uint64_t m = 1; m <= 2 * bound; ++m) {
    if (stern(2 * m) != stern(m - 1) + stern(m) || stern(2 * m + 1) != stern(m)) {
      res.counterexample = "stern recurrence fails at m = " + std::to_string(m);
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_diagonal_coverage(const VerifyOptions&) {
  CheckResult res;
  for (int band = 1; band <= 3; ++band) {
    Int stride = pow2(static_cast<std::uint64_t>(band));
    Int offset = pow2(static_cast<std::uint64_t>(band - 1));
    for (std::uint64_t q = 1; q <= 30; ++q) {
      for (std::uint64_t p = static_cast<std::uint64_t>(band - 1) * q + 1; p <= static_cast<std::uint64_t>(band) * q; ++p) {
        if (gcd(Int(p), Int(q)) != 1) continue;
        Fraction r(p, q);
        NodeAddress addr = address_of(r);
        std::string where = r.str() + " in (" + std::to_string(band - 1) + ", " +
                            std::to_string(band) + "]";
        if ((addr.position + offset) % stride != 0) {
          res.counterexample = where + ": position not in the 2^n i - 2^(n-1) family";
          return res;
        }
        auto j = solve_membership(r, addr.position);
        if (!j || diagonal_element(addr.position, *j) != r) {
          res.counterexample = where + ": not located in diagonal " + addr.position.str();
          return res;
        }
        ++res.instances;
      }
    }
  }
  return res;
}

inline CheckResult check_diagonal_convergence(const VerifyOptions& o) {
  CheckResult res;
  std::uint64_t bound = std::min<std::uint64_t>(std::uint64_t{1} << o.depth, 256);
  for (std::uint64_t n = 2; n <= bound; ++n) {
    Fraction lim = diagonal_limit(Int(n));
    Fraction prev_gap = abs_diff(diagonal_element(Int(n), 1), lim);
    for (std::uint64_t j = 2; j <= 64; ++j) {
      Fraction gap = abs_diff(diagonal_element(Int(n), Int(j)), lim);
      if (!(gap < prev_gap)) {
        res.counterexample = "diagonal " + std::to_string(n) + ": |element - limit| not" +
                             " decreasing at j = " + std::to_string(j);
        return res;
      }
      prev_gap = gap;
      ++res.instances;
    }
  }
  return res;
}

inline CheckResult check_qmark_alias(const VerifyOptions& o) {
  return for_each_node(std::min(o.depth, 12), {},
                       [](int n, const LevelStream& s) -> std::optional<std::string> {
                         (void)n;
                         Fraction r = s.value();
                         std::vector<Int> terms = to_cf(r).terms();
                         Dyadic canonical = qmark_eval_terms(terms);
                         terms.back() -= 1;
                         terms.emplace_back(1);
                         if (terms[terms.size() - 2] == 0) return std::nullopt;  // root only
                         if (qmark_eval_terms(terms) != canonical)
                           return "aliases of " + r.str() + " evaluate differently";
                         return std::nullopt;
                       });
}

inline CheckResult check_qmark_order(const VerifyOptions& o) {
  CheckResult res;
  std::vector<Fraction> values;
  int depth = std::min(o.depth, 12);
  for (int n = 1; n <= depth; ++n) {
    LevelStream s = LevelStream::first(n);
    for (;;) {
      values.push_back(s.value());
      if (!s.advance()) break;
    }
  }
  std::sort(values.begin(), values.end());
  Dyadic prev = qmark(values.front());
  for (std::size_t i = 1; i < values.size(); ++i) {
    Dyadic cur = qmark(values[i]);
    if (!(prev < cur)) {
      res.counterexample = "?(" + values[i - 1].str() + ") >= ?(" + values[i].str() + ")";
      return res;
    }
    prev = cur;
    ++res.instances;
  }
  return res;
}

inline CheckResult check_qmark_children(const VerifyOptions& o) {
  return for_each_node(std::min(o.depth, o.qmark_depth), {},
                       [](int n, const LevelStream& s) -> std::optional<std::string> {
                         Fraction r = s.value();
                         auto [left_img, right_img] = qmark_children(r, qmark(r));
                         auto [left, right] = children(r);
                         if (left_img != qmark(left) || right_img != qmark(right))
                           return node_ref(n, s.position()) +
                                  ": children images disagree with direct evaluation";
                         return std::nullopt;
                       });
}

inline CheckResult check_qmark_level_sum(const VerifyOptions& o) {
  CheckResult res;
  for (int n = 1; n <= std::min(o.depth, 16); ++n) {
    auto [qsum, fsum] = qmark_level_sum(n);
    if (qsum.to_fraction() != fsum) {
      res.counterexample = "level " + std::to_string(n) + ": sum of images " + qsum.str() +
                           " != sum of fractions " + fsum.str();
      return res;
    }
    Fraction expect =
        n == 1 ? Fraction(1, 1) : Fraction(3 * pow2(static_cast<std::uint64_t>(n - 1)) - 1, 2);
    if (fsum != expect) {
      res.counterexample = "level " + std::to_string(n) + ": sum " + fsum.str() + " != " +
                           expect.str();
      return res;
    }
    ++res.instances;
  }
  return res;
}

// (alpha mantissa, alpha exponent, shift) for diagonals 1..32
inline constexpr unsigned kQmarkMapTable[32][3] = {
    {0, 0, 0}, {1, 0, 0},  {1, 1, 2},  {2, 0, 0},  {1, 2, 3},  {3, 1, 2},  {3, 2, 3},  {3, 0, 0},
    {1, 3, 4}, {5, 2, 3},  {5, 3, 4},  {5, 1, 2},  {3, 3, 4},  {7, 2, 3},  {7, 3, 4},  {4, 0, 0},
    {1, 4, 5}, {9, 3, 4},  {9, 4, 5},  {9, 2, 3},  {5, 4, 5},  {13, 3, 4}, {13, 4, 5}, {7, 1, 2},
    {3, 4, 5}, {11, 3, 4}, {11, 4, 5}, {11, 2, 3}, {7, 4, 5},  {15, 3, 4}, {15, 4, 5}, {5, 0, 0},
};

inline CheckResult check_qmark_diagonal_map(const VerifyOptions&) {
  CheckResult res;
  for (std::uint64_t i = 1; i <= 64; ++i) {
    AffineDyadicMap map = qmark_diagonal_map(Int(i), /*verify_depth=*/4);
    for (std::uint64_t j = 1; j <= 32; ++j) {
      if (map.apply(Dyadic::power_of_two(j - 1)) != qmark(diagonal_element(Int(i), Int(j)))) {
        res.counterexample = "diagonal " + std::to_string(i) + ", j = " + std::to_string(j) +
                             ": map disagrees with direct evaluation";
        return res;
      }
      ++res.instances;
    }
    if (i <= 32) {
      const auto& g = kQmarkMapTable[i - 1];
      if (map.offset != Dyadic(g[0], g[1]) || map.shift != g[2]) {
        res.counterexample = "diagonal " + std::to_string(i) + ": map " +
                             affine_map_formula(map) + " != expected " +
                             affine_map_formula({Dyadic(g[0], g[1]), g[2]});
        return res;
      }
      ++res.instances;
    }
  }
  return res;
}

inline CheckResult check_qmark_translation(const VerifyOptions&) {
  CheckResult res;
  std::mt19937_64 rng(20240903);
  for (int iter = 0; iter < 300; ++iter) {
    Fraction r(rng() % 1'000'000 + 1, rng() % 1'000'000 + 1);
    Fraction shifted = Fraction::from_reduced(r.num() + r.den(), r.den());
    if (qmark(shifted) != Dyadic::from_integer(1) + qmark(r)) {
      res.counterexample = "?(1 + " + r.str() + ") != 1 + ?(" + r.str() + ")";
      return res;
    }
    ++res.instances;
  }
  return res;
}

// --- golden comparisons (--seed-check) -------------------------------------

inline CheckResult check_figure_tree_rows(const VerifyOptions&) {
  static const char* kRows[5] = {
      "1/1\n",
      "1/2 2/1\n",
      "1/3 3/2 2/3 3/1\n",
      "1/4 4/3 3/5 5/2 2/5 5/3 3/4 4/1\n",
      "1/5 5/4 4/7 7/3 3/8 8/5 5/7 7/2 2/7 7/5 5/8 8/3 3/7 7/4 4/5 5/1\n",
  };
  CheckResult res;
  for (int n = 1; n <= 5; ++n) {
    std::ostringstream out;
    render_level_text(out, n);
    if (out.str() != kRows[n - 1]) {
      res.counterexample = "level " + std::to_string(n) + " row mismatch: " + out.str();
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_figure_diagonal_formulas(const VerifyOptions&) {
  static const char* kFormulas[16] = {
      "1/j",          "(j+1)/j",       "(j+1)/(2j+1)",  "(2j+1)/j",
      "(j+1)/(3j+2)", "(3j+2)/(2j+1)", "(2j+1)/(3j+1)", "(3j+1)/j",
      "(j+1)/(4j+3)", "(4j+3)/(3j+2)", "(3j+2)/(5j+3)", "(5j+3)/(2j+1)",
      "(2j+1)/(5j+2)", "(5j+2)/(3j+1)", "(3j+1)/(4j+1)", "(4j+1)/j",
  };
  CheckResult res;
  for (int n = 1; n <= 16; ++n) {
    std::string got = affine_formula(diagonal(n));
    if (got != kFormulas[n - 1]) {
      res.counterexample = "diagonal " + std::to_string(n) + ": " + got + " != " +
                           kFormulas[n - 1];
      return res;
    }
    ++res.instances;
  }
  return res;
}

inline CheckResult check_figure_qmark_maps(const VerifyOptions&) {
  CheckResult res;
  for (unsigned i = 1; i <= 32; ++i) {
    AffineDyadicMap map = qmark_diagonal_map(i);
    const auto& g = kQmarkMapTable[i - 1];
    if (map.offset != Dyadic(g[0], g[1]) || map.shift != g[2]) {
      res.counterexample = "diagonal " + std::to_string(i) + ": map " + affine_map_formula(map);
      return res;
    }
    ++res.instances;
  }
  return res;
}

}  // namespace verify_detail

inline const std::vector<IdentityCheck>& identity_checks() {
  static const std::vector<IdentityCheck> checks = {
      {"reduced-form", "every tree entry is in lowest terms", verify_detail::check_reduced_form},
      {"uniqueness",
       "levels never repeat a value; digit-sum <= depth rationals appear exactly once",
       verify_detail::check_uniqueness},
      {"adjacent-denominator", "den(entry j) = num(entry j+1) within a level",
       verify_detail::check_adjacent_denominator},
      {"reciprocal-symmetry", "entry j is the reciprocal of entry 2^(n-1)+1-j",
       verify_detail::check_reciprocal_symmetry},
      {"child-product", "every node equals the product of its children",
       verify_detail::check_child_product},
      {"level-product", "the product over a level is 1", verify_detail::check_level_product},
      {"simplicity-sum", "sum of 1/(ab) over a level is 1", verify_detail::check_simplicity_sum},
      {"complexity-square", "the product of ab over a level is a perfect square",
       verify_detail::check_complexity_square},
      {"trace-sum", "sum of a+b over level n is 2*3^(n-1)", verify_detail::check_trace_sum},
      {"complexity-trace", "sum of ab at level n = sum of (a+b)^2 at level n-1",
       verify_detail::check_complexity_trace},
      {"level-sum", "sum over level n is 3*2^(n-2) - 1/2", verify_detail::check_level_sum},
      {"path-roundtrip", "path_of and fraction_at are mutually inverse",
       verify_detail::check_path_roundtrip},
      {"rank-roundtrip", "rank_of and unrank are mutually inverse, in breadth-first order",
       verify_detail::check_rank_roundtrip},
      {"digit-sum", "continued-fraction digit sum equals the level",
       verify_detail::check_digit_sum},
      {"cf-roundtrip", "to_cf and from_cf are mutually inverse", verify_detail::check_cf_roundtrip},
      {"cf-path", "cf_to_path(to_cf(r)) = path_of(r) and path_to_cf(path_of(r)) = to_cf(r)",
       verify_detail::check_cf_path},
      {"cf-reciprocal", "to_cf(1/r) = [0] ++ to_cf(r) for r > 1",
       verify_detail::check_cf_reciprocal},
      {"diagonal-determinant", "every diagonal satisfies ad - bc = -1",
       verify_detail::check_diagonal_determinant},
      {"diagonal-column", "the affine recurrence matches the column reading of the level matrix",
       verify_detail::check_diagonal_column},
      {"stern-structure",
       "diagonal n+1 has coefficients (b_(n-1), b_n) and constants (b_(m-1), b_m) with m from "
       "the index formula",
       verify_detail::check_stern_structure},
      {"diagonal-coverage", "families 2^n i - 2^(n-1) cover (n-1, n] (desk scale, q <= 30)",
       verify_detail::check_diagonal_coverage},
      {"diagonal-convergence", "|element - limit| is strictly decreasing along a diagonal",
       verify_detail::check_diagonal_convergence},
      {"qmark-alias", "? agrees on both continued-fraction aliases",
       verify_detail::check_qmark_alias},
      {"qmark-order", "r < s implies ?(r) < ?(s)", verify_detail::check_qmark_order},
      {"qmark-children", "children images are 1 + x/2^(n+1) - (n+2)/2^(n+1) and 1 + x",
       verify_detail::check_qmark_children},
      {"qmark-level-sum", "sum of ?(r) = sum of r = 3*2^(n-2) - 1/2 over a level",
       verify_detail::check_qmark_level_sum},
      {"qmark-diagonal-map", "?(L_i(j)) = alpha_i + 2^(1-j)/2^(k_i)",
       verify_detail::check_qmark_diagonal_map},
      {"qmark-translation", "?(1 + r) = 1 + ?(r)", verify_detail::check_qmark_translation},
  };
  return checks;
}

inline const std::vector<IdentityCheck>& golden_checks() {
  static const std::vector<IdentityCheck> checks = {
      {"figure-tree-rows", "levels 1..5 match the reference rows byte for byte",
       verify_detail::check_figure_tree_rows},
      {"figure-diagonal-formulas", "diagonals 1..16 match the reference affine formulas",
       verify_detail::check_figure_diagonal_formulas},
      {"figure-qmark-maps", "affine ?-maps of diagonals 1..32 match the reference tree",
       verify_detail::check_figure_qmark_maps},
  };
  return checks;
}

struct VerifyReport {
  struct Entry {
    std::string name;
    std::string statement;
    std::uint64_t instances;
    bool pass;
    std::optional<std::string> counterexample;
  };
  int depth;
  std::vector<Entry> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Entry& e) { return e.pass; });
  }
};

/// Runs the selected identity checks (all of them for selection {"all"}) at
/// the given depth. Golden figure comparisons join in when seed_check is set
/// or when named explicitly.
inline VerifyReport run_verify(const VerifyOptions& options,
                               const std::vector<std::string>& selection) {
  std::vector<const IdentityCheck*> todo;
  bool all = selection.empty() ||
             std::find(selection.begin(), selection.end(), "all") != selection.end();
  auto want = [&](const char* name) {
    return all || std::find(selection.begin(), selection.end(), name) != selection.end();
  };
  for (const IdentityCheck& c : identity_checks()) {
    if (want(c.name)) todo.push_back(&c);
  }
  for (const IdentityCheck& c : golden_checks()) {
    if ((all && options.seed_check) ||
        std::find(selection.begin(), selection.end(), c.name) != selection.end()) {
      todo.push_back(&c);
    }
  }
  if (!all) {
    for (const std::string& name : selection) {
      bool known = false;
      for (const IdentityCheck& c : identity_checks()) known |= name == c.name;
      for (const IdentityCheck& c : golden_checks()) known |= name == c.name;
      if (!known) throw std::invalid_argument("verify: unknown identity '" + name + "'");
    }
  }

  std::vector<CheckResult> results(todo.size());
  if (options.jobs <= 1 || todo.size() <= 1) {
    for (std::size_t i = 0; i < todo.size(); ++i) results[i] = todo[i]->run(options);
  } else {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= todo.size()) return;
        results[i] = todo[i]->run(options);
      }
    };
    std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(options.jobs),
                                                  todo.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  VerifyReport report{options.depth, {}};
  for (std::size_t i = 0; i < todo.size(); ++i) {
    report.checks.push_back({todo[i]->name, todo[i]->statement, results[i].instances,
                             results[i].passed(), std::move(results[i].counterexample)});
  }
  return report;
}

inline void render_report_json(std::ostream& out, const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["depth"] = report.depth;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& e : report.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = e.name;
    entry["anchor"] = e.statement;
    entry["instances"] = e.instances;
    entry["status"] = e.pass ? "pass" : "fail";
    if (e.counterexample) entry["counterexample"] = *e.counterexample;
    j["checks"].push_back(std::move(entry));
  }
  out << j.dump(2) << '\n';
}

inline void render_report_table(std::ostream& out, const VerifyReport& report) {
  out << "depth " << report.depth << "\n";
  std::size_t width = 4;
  for (const auto& e : report.checks) width = std::max(width, e.name.size());
  for (const auto& e : report.checks) {
    out << "  " << e.name << std::string(width - e.name.size() + 2, ' ')
        << (e.pass ? "pass" : "FAIL") << "  (" << e.instances << " instances)";
    if (e.counterexample) out << "  " << *e.counterexample;
    out << "\n";
  }
}

}  // namespace cwkit
