#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cwkit/integer.hpp"

namespace cwkit {

enum class Dir : unsigned char { L, R };

inline Dir opposite(Dir d) { return d == Dir::L ? Dir::R : Dir::L; }
inline char dir_char(Dir d) { return d == Dir::L ? 'L' : 'R'; }

/**
 * Root-to-node descent word over {L, R}, run-length encoded. The empty path
 * denotes the root. Adjacent runs alternate direction and counts are >= 1;
 * counts are big integers because run lengths equal continued-fraction terms.
 */
class Path {
 public:
  struct Run {
    Dir dir;
    Int count;
    friend bool operator==(const Run& a, const Run& b) = default;
  };

  Path() = default;

  explicit Path(std::vector<Run> runs) : runs_(std::move(runs)) {
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      if (runs_[i].count < 1) throw std::domain_error("Path: run count must be >= 1");
      if (i > 0 && runs_[i].dir == runs_[i - 1].dir)
        throw std::domain_error("Path: adjacent runs must alternate direction");
    }
  }

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }

  Int length() const {
    Int n = 0;
    for (const Run& r : runs_) n += r.count;
    return n;
  }

  /// Appends `count` steps in direction `dir`, merging with the last run.
  void append(Dir dir, Int count = 1) {
    if (count < 1) throw std::domain_error("Path: appended count must be >= 1");
    if (!runs_.empty() && runs_.back().dir == dir) {
      runs_.back().count += count;
    } else {
      runs_.push_back({dir, std::move(count)});
    }
  }

  Path reversed() const {
    std::vector<Run> rev(runs_.rbegin(), runs_.rend());
    return Path(std::move(rev));
  }

  /// Expands to one character per step ("RLLR"); refuses absurd lengths.
  std::string word() const {
    Int n = length();
    if (n > 1'000'000) throw std::overflow_error("Path: word too long to expand");
    std::string w;
    w.reserve(n.convert_to<std::size_t>());
    for (const Run& r : runs_) {
      auto c = r.count.convert_to<std::size_t>();
      w.append(c, dir_char(r.dir));
    }
    return w;
  }

  friend bool operator==(const Path& a, const Path& b) = default;

 private:
  std::vector<Run> runs_;
};

}  // namespace cwkit
