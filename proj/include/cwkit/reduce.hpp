#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace cwkit {

/**
 * Binary-counter pairwise reducer for an associative merge.
 *
 * Slot i holds the combined value of a block of 2^i pushed elements, so a
 * stream of N elements costs O(log N) live intermediates. Exact rational sums
 * and huge integer products over a tree level stay small/balanced this way,
 * where a left fold would grow one giant operand.
 */
template <class T, class Merge>
class PairwiseReducer {
 public:
  explicit PairwiseReducer(Merge merge = Merge{}) : merge_(std::move(merge)) {}

  void push(T value) {
    for (std::size_t i = 0;; ++i) {
      if (i == slots_.size()) {
        slots_.emplace_back(std::move(value));
        return;
      }
      if (!slots_[i]) {
        slots_[i] = std::move(value);
        return;
      }
      value = merge_(*slots_[i], value);
      slots_[i].reset();
    }
  }

  bool empty() const {
    for (const auto& s : slots_) {
      if (s) return false;
    }
    return true;
  }

  /// Folds the remaining blocks, smallest first. Empty reducer yields nullopt.
  std::optional<T> finish() {
    std::optional<T> acc;
    for (auto& s : slots_) {
      if (!s) continue;
      if (!acc) {
        acc = std::move(*s);
      } else {
        acc = merge_(*s, *acc);
      }
      s.reset();
    }
    return acc;
  }

 private:
  std::vector<std::optional<T>> slots_;
  Merge merge_;
};

}  // namespace cwkit
