#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cwkit/fraction.hpp"
#include "cwkit/integer.hpp"
#include "cwkit/path.hpp"
#include "cwkit/reduce.hpp"

namespace cwkit {

// ---------------------------------------------------------------------------
// Navigation: root 1/1, node a/b has children a/(a+b) and (a+b)/b.
// ---------------------------------------------------------------------------

inline bool is_root(const Fraction& r) { return r.is_one(); }

inline Fraction left_child(const Fraction& r) {
  return Fraction::from_reduced(r.num(), r.num() + r.den());
}

inline Fraction right_child(const Fraction& r) {
  return Fraction::from_reduced(r.num() + r.den(), r.den());
}

inline Fraction child(const Fraction& r, Dir d) {
  return d == Dir::L ? left_child(r) : right_child(r);
}

inline std::pair<Fraction, Fraction> children(const Fraction& r) {
  return {left_child(r), right_child(r)};
}

/// a/b with a < b is the left child of a/(b-a); with a > b the right child of
/// (a-b)/b. a == b only at the root, which has no parent.
inline Fraction parent(const Fraction& r) {
  if (is_root(r)) throw std::domain_error("parent: the root 1/1 has no parent");
  if (r.num() < r.den()) return Fraction::from_reduced(r.num(), r.den() - r.num());
  return Fraction::from_reduced(r.num() - r.den(), r.den());
}

/// Unique root-to-node path. Ascents are collapsed run-wise (each maximal
/// run of same-direction steps is one division), so huge fractions cost one
/// big-integer operation per continued-fraction term, not per tree edge.
inline Path path_of(const Fraction& r) {
  Int a = r.num(), b = r.den();
  std::vector<Path::Run> up;  // node-to-root order
  while (!(a == 1 && b == 1)) {
    if (a < b) {
      Int q = (b - 1) / a;
      b -= q * a;
      up.push_back({Dir::L, std::move(q)});
    } else {
      Int q = (a - 1) / b;
      a -= q * b;
      up.push_back({Dir::R, std::move(q)});
    }
  }
  std::vector<Path::Run> down(up.rbegin(), up.rend());
  return Path(std::move(down));
}

/// Walks a path from the root; one operation per run (R^k adds k*den to num,
/// L^k adds k*num to den).
inline Fraction fraction_at(const Path& p) {
  Int a = 1, b = 1;
  for (const Path::Run& run : p.runs()) {
    if (run.dir == Dir::R) {
      a += run.count * b;
    } else {
      b += run.count * a;
    }
  }
  return Fraction::from_reduced(std::move(a), std::move(b));
}

/// 1-based level (root = level 1). Equals the sum of the Euclidean quotients
/// of num/den, i.e. the digit sum of the continued fraction.
inline Int level_of(const Fraction& r) {
  Int a = r.num(), b = r.den(), sum = 0;
  while (b != 0) {
    sum += a / b;
    a %= b;
    std::swap(a, b);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Breadth-first rank bijection: the node at level n, position j has rank
// 2^(n-1) + j - 1; the binary expansion of the rank minus its leading 1 bit
// spells the path with 0 = L, 1 = R.
// ---------------------------------------------------------------------------

namespace detail {
// A rank with more bits than this is far beyond anything enumerable anyway.
inline constexpr std::uint64_t kMaxRankBits = 1u << 22;
}  // namespace detail

inline Int rank_of(const Path& p) {
  Int len = p.length();
  if (len >= detail::kMaxRankBits)
    throw std::overflow_error("rank_of: node too deep for a materialized rank");
  Int rank = 1;
  for (const Path::Run& run : p.runs()) {
    auto c = run.count.convert_to<std::uint64_t>();
    rank <<= c;
    if (run.dir == Dir::R) rank += pow2(c) - 1;
  }
  return rank;
}

inline Int rank_of(const Fraction& r) { return rank_of(path_of(r)); }

inline Fraction unrank(const Int& k) {
  if (k < 1) throw std::domain_error("unrank: rank must be >= 1");
  Int a = 1, b = 1;
  std::uint64_t top = bit_floor_log2(k);
  for (std::uint64_t i = top; i-- > 0;) {
    if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) {
      a += b;
    } else {
      b += a;
    }
  }
  return Fraction::from_reduced(std::move(a), std::move(b));
}

/// Level/position coordinates, both 1-based; position ranges over
/// [1, 2^(level-1)].
struct NodeAddress {
  Int level;
  Int position;

  NodeAddress(Int level_, Int position_) : level(std::move(level_)), position(std::move(position_)) {
    if (level < 1) throw std::domain_error("NodeAddress: level must be >= 1");
    if (position < 1) throw std::domain_error("NodeAddress: position must be >= 1");
    if (position > 1 && bit_floor_log2(position - 1) + 2 > level)
      throw std::domain_error("NodeAddress: position exceeds 2^(level-1)");
  }

  friend bool operator==(const NodeAddress& a, const NodeAddress& b) = default;
};

inline Int rank_of(const NodeAddress& addr) {
  std::uint64_t lvl = to_uint64(addr.level, "level");
  if (lvl >= detail::kMaxRankBits) throw std::overflow_error("rank_of: level too deep");
  return pow2(lvl - 1) + addr.position - 1;
}

inline NodeAddress address_of_rank(const Int& rank) {
  if (rank < 1) throw std::domain_error("address_of_rank: rank must be >= 1");
  std::uint64_t lvl = bit_floor_log2(rank) + 1;
  return NodeAddress(Int(lvl), rank - pow2(lvl - 1) + 1);
}

inline NodeAddress address_of(const Fraction& r) { return address_of_rank(rank_of(r)); }

inline Fraction node_at(const NodeAddress& addr) { return unrank(rank_of(addr)); }

// ---------------------------------------------------------------------------
// Level streaming
// ---------------------------------------------------------------------------

/**
 * Constant-memory walk over one level in position order, in either direction.
 *
 * The path word is treated as a binary counter (L = 0, R = 1, deepest step =
 * least significant). Incrementing flips a trailing block, so only the
 * ancestors below the flip point are recomputed: amortized two child steps
 * per node instead of level-many, and never 2^(n-1) live fractions.
 */
class LevelStream {
 public:
  static LevelStream first(int level) { return LevelStream(level, false); }
  static LevelStream last(int level) { return LevelStream(level, true); }

  /// Starts at an arbitrary position, so verification can be partitioned by
  /// position range across workers (each stream is independent state).
  static LevelStream at(int level, std::uint64_t position) {
    LevelStream s(level, false);
    if (position < 1 || position > s.size())
      throw std::domain_error("LevelStream: position out of range");
    std::uint64_t word = position - 1;  // path bits, first step most significant
    for (int i = 0; i <= level - 2; ++i) {
      s.bits_[static_cast<std::size_t>(i)] =
          (word >> (level - 2 - i)) & 1 ? 1 : 0;
      s.step(i, s.bits_[static_cast<std::size_t>(i)] ? Dir::R : Dir::L);
    }
    s.pos_ = position;
    return s;
  }

  int level() const { return level_; }
  std::uint64_t position() const { return pos_; }
  std::uint64_t size() const { return std::uint64_t{1} << (level_ - 1); }

  Fraction value() const {
    const auto& [a, b] = anc_.back();
    return Fraction::from_reduced(a, b);
  }
  const Int& value_num() const { return anc_.back().first; }
  const Int& value_den() const { return anc_.back().second; }

  /// Moves one position to the right; false (and no move) at the last node.
  bool advance() {
    int i = level_ - 2;
    while (i >= 0 && bits_[i] == 1) --i;
    if (i < 0) return false;
    bits_[i] = 1;
    step(i, Dir::R);
    for (int k = i + 1; k <= level_ - 2; ++k) {
      bits_[k] = 0;
      step(k, Dir::L);
    }
    ++pos_;
    return true;
  }

  /// Moves one position to the left; false (and no move) at the first node.
  bool retreat() {
    int i = level_ - 2;
    while (i >= 0 && bits_[i] == 0) --i;
    if (i < 0) return false;
    bits_[i] = 0;
    step(i, Dir::L);
    for (int k = i + 1; k <= level_ - 2; ++k) {
      bits_[k] = 1;
      step(k, Dir::R);
    }
    --pos_;
    return true;
  }

 private:
  LevelStream(int level, bool at_end) : level_(level) {
    if (level < 1) throw std::domain_error("LevelStream: level must be >= 1");
    if (level > 62) throw std::overflow_error("LevelStream: level beyond supported range");
    bits_.assign(static_cast<std::size_t>(level - 1), at_end ? 1 : 0);
    anc_.resize(static_cast<std::size_t>(level));
    anc_[0] = {1, 1};
    for (int i = 0; i <= level - 2; ++i) step(i, at_end ? Dir::R : Dir::L);
    pos_ = at_end ? size() : 1;
  }

  // anc_[i+1] = child of anc_[i] in direction d
  void step(int i, Dir d) {
    const auto& [a, b] = anc_[static_cast<std::size_t>(i)];
    auto& out = anc_[static_cast<std::size_t>(i) + 1];
    if (d == Dir::R) {
      out.first = a + b;
      out.second = b;
    } else {
      out.first = a;
      out.second = a + b;
    }
  }

  int level_;
  std::vector<std::uint8_t> bits_;
  std::vector<std::pair<Int, Int>> anc_;
  std::uint64_t pos_ = 1;
};

// ---------------------------------------------------------------------------
// Level statistics: for r = a/b, trace t(r) = a+b, complexity c(r) = ab,
// simplicity s(r) = 1/(ab).
// ---------------------------------------------------------------------------

inline Int trace(const Fraction& r) { return r.num() + r.den(); }
inline Int complexity(const Fraction& r) { return r.num() * r.den(); }
inline Fraction simplicity(const Fraction& r) {
  return Fraction::from_reduced(1, complexity(r));
}

struct LevelStats {
  Fraction sum;
  Int trace_sum;
  Fraction simplicity_sum;
  Fraction product;
  Int complexity_product;
  Int complexity_sum;
  std::optional<Int> prev_trace_square_sum;  // only for n >= 2
};

/// All seven aggregates of one level, computed exactly in one streaming pass
/// (plus a pass over level n-1 for the trace-square sum). Products are taken
/// pairwise and left unreduced until the end.
inline LevelStats level_stats(int n) {
  auto add = [](const Fraction& x, const Fraction& y) { return x + y; };
  auto mul = [](const Int& x, const Int& y) { return Int(x * y); };
  PairwiseReducer<Fraction, decltype(add)> sum(add), simplicity_sum(add);
  PairwiseReducer<Int, decltype(mul)> num_prod(mul), den_prod(mul), cx_prod(mul);
  Int trace_sum = 0, cx_sum = 0;

  LevelStream s = LevelStream::first(n);
  for (;;) {
    const Int& a = s.value_num();
    const Int& b = s.value_den();
    sum.push(Fraction::from_reduced(a, b));
    simplicity_sum.push(Fraction::from_reduced(1, a * b));
    num_prod.push(a);
    den_prod.push(b);
    cx_prod.push(a * b);
    trace_sum += a + b;
    cx_sum += a * b;
    if (!s.advance()) break;
  }

  LevelStats stats{
      .sum = *sum.finish(),
      .trace_sum = std::move(trace_sum),
      .simplicity_sum = *simplicity_sum.finish(),
      .product = Fraction(*num_prod.finish(), *den_prod.finish()),
      .complexity_product = *cx_prod.finish(),
      .complexity_sum = std::move(cx_sum),
      .prev_trace_square_sum = std::nullopt,
  };

  if (n >= 2) {
    Int sq = 0;
    LevelStream prev = LevelStream::first(n - 1);
    for (;;) {
      Int t = prev.value_num() + prev.value_den();
      sq += t * t;
      if (!prev.advance()) break;
    }
    stats.prev_trace_square_sum = std::move(sq);
  }
  return stats;
}

}  // namespace cwkit
