#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cwkit/diagonals.hpp"
#include "cwkit/fraction.hpp"
#include "cwkit/tree.hpp"

using cwkit::Diagonal;
using cwkit::Fraction;
using cwkit::Int;

TEST_CASE("seed diagonals and recurrence") {
  CHECK(cwkit::diagonal(1) == Diagonal{1, 0, 1, 1, 0});  // 1/j
  CHECK(cwkit::diagonal(2) == Diagonal{2, 1, 1, 1, 0});  // (j+1)/j
  CHECK(cwkit::diagonal(5) == Diagonal{5, 1, 1, 3, 2});  // (j+1)/(3j+2)
  CHECK(cwkit::diagonal(6) == Diagonal{6, 3, 2, 2, 1});  // (3j+2)/(2j+1)
  CHECK(cwkit::diagonal(11) == Diagonal{11, 3, 2, 5, 3});
  CHECK(cwkit::diagonal_element(11, 1) == Fraction(5, 8));
  CHECK_THROWS_AS(cwkit::diagonal(0), std::domain_error);
}

TEST_CASE("first sixteen diagonal families") {
  // (a, b, c, d) for L1..L16
  const int expect[16][4] = {
      {0, 1, 1, 0}, {1, 1, 1, 0}, {1, 1, 2, 1}, {2, 1, 1, 0},
      {1, 1, 3, 2}, {3, 2, 2, 1}, {2, 1, 3, 1}, {3, 1, 1, 0},
      {1, 1, 4, 3}, {4, 3, 3, 2}, {3, 2, 5, 3}, {5, 3, 2, 1},
      {2, 1, 5, 2}, {5, 2, 3, 1}, {3, 1, 4, 1}, {4, 1, 1, 0},
  };
  for (int n = 1; n <= 16; ++n) {
    Diagonal d = cwkit::diagonal(n);
    CHECK(d.a == expect[n - 1][0]);
    CHECK(d.b == expect[n - 1][1]);
    CHECK(d.c == expect[n - 1][2]);
    CHECK(d.d == expect[n - 1][3]);
  }
}

TEST_CASE("diagonal elements") {
  CHECK(cwkit::diagonal_element(1, 4) == Fraction(1, 4));
  CHECK(cwkit::diagonal_element(4, 2) == Fraction(5, 2));
  CHECK(cwkit::diagonal_element(2, 1) == Fraction(2, 1));
  CHECK_THROWS_AS(cwkit::diagonal_element(4, 0), std::domain_error);
  CHECK(cwkit::right_diagonal_element(1, 3) == Fraction(3, 1));
  CHECK(cwkit::right_diagonal_element(2, 2) == Fraction(2, 3));
  CHECK(cwkit::right_diagonal_element(4, 1) == Fraction(1, 3));
}

TEST_CASE("recurrence matches the column reading of the level matrix") {
  for (Int n = 1; n <= 64; ++n) {
    std::uint64_t col_level = cwkit::bit_ceil_log2(n);
    for (Int j = 1; j <= 8; ++j) {
      Fraction from_matrix =
          cwkit::node_at(cwkit::NodeAddress(Int(col_level) + j, n));
      REQUIRE(cwkit::diagonal_element(n, j) == from_matrix);
    }
  }
}

TEST_CASE("determinant is -1 for every diagonal") {
  for (Int n = 1; n <= 2000; ++n) {
    REQUIRE(cwkit::diagonal(n).determinant() == -1);
  }
}

TEST_CASE("stern sequence values") {
  const int expect[] = {1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5};
  for (std::uint64_t m = 0; m <= 10; ++m) CHECK(cwkit::stern(m) == expect[m]);
  CHECK(cwkit::stern(4) == 3);
  CHECK(cwkit::stern(15) == 1);  // numerator of 1/5, breadth-first index 16
}

TEST_CASE("stern sequence satisfies the diatomic recurrence") {
  for (std::uint64_t m = 1; m <= 4000; ++m) {
    REQUIRE(cwkit::stern(2 * m) == cwkit::stern(m - 1) + cwkit::stern(m));
    REQUIRE(cwkit::stern(2 * m + 1) == cwkit::stern(m));
  }
}

TEST_CASE("stern cache is usable from several threads") {
  cwkit::SternSequence seq;
  std::vector<std::thread> workers;
  std::vector<Int> results(4);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&seq, &results, t] {
      Int acc = 0;
      for (std::uint64_t m = 0; m <= 2000; ++m) acc += seq.at(m);
      results[static_cast<std::size_t>(t)] = acc;
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 1; t < 4; ++t) CHECK(results[t] == results[0]);
}

TEST_CASE("coefficient pair of the next diagonal is a stern ratio") {
  CHECK(cwkit::coefficient_ratio(9) == std::pair<Int, Int>{4, 3});
  CHECK(cwkit::coefficient_ratio(1) == std::pair<Int, Int>{1, 1});
  CHECK(cwkit::coefficient_ratio(4) == std::pair<Int, Int>{1, 3});
  for (std::uint64_t n = 1; n <= 512; ++n) {
    Diagonal d = cwkit::diagonal(Int(n) + 1);
    auto [num, den] = cwkit::coefficient_ratio(n);
    REQUIRE(d.a == num);
    REQUIRE(d.c == den);
  }
}

TEST_CASE("constant index formula") {
  CHECK(cwkit::constant_index(9) == 5);
  CHECK(cwkit::constant_index(4) == 2);
  CHECK(cwkit::constant_index(6) == 1);
  // all-ones n (diagonal n+1 on the right spine) has no stern index
  for (std::uint64_t n : {1u, 3u, 7u, 15u, 31u, 255u}) {
    CHECK_FALSE(cwkit::constant_index(n).has_value());
  }
  CHECK_THROWS_AS(cwkit::constant_index(0), std::domain_error);

  for (std::uint64_t n = 2; n <= 512; ++n) {
    Diagonal d = cwkit::diagonal(Int(n) + 1);
    auto m = cwkit::constant_index(n);
    if (m) {
      REQUIRE(d.b == cwkit::stern(*m - 1));
      REQUIRE(d.d == cwkit::stern(*m));
    } else {
      REQUIRE(d.b == 1);
      REQUIRE(d.d == 0);
    }
  }
}

TEST_CASE("membership solving") {
  CHECK(cwkit::solve_membership(Fraction(5, 8), 11) == Int(1));
  CHECK_FALSE(cwkit::solve_membership(Fraction(5, 8), 3).has_value());
  CHECK(cwkit::solve_membership(Fraction(1, 4), 1) == Int(4));
  // the limit itself is never attained
  CHECK_FALSE(cwkit::solve_membership(Fraction(4, 3), 10).has_value());

  for (Int n = 1; n <= 40; ++n) {
    for (Int j = 1; j <= 12; ++j) {
      REQUIRE(cwkit::solve_membership(cwkit::diagonal_element(n, j), n) == j);
    }
  }
}

TEST_CASE("diagonal limits") {
  CHECK(cwkit::diagonal_limit(10) == Fraction(4, 3));
  CHECK(cwkit::diagonal_limit(2) == Fraction(1, 1));
  CHECK(cwkit::diagonal_limit(4) == Fraction(2, 1));
  CHECK_THROWS_AS(cwkit::diagonal_limit(1), std::domain_error);

  std::set<std::pair<Int, Int>> seen;
  for (Int n = 2; n <= 128; ++n) {
    Fraction lim = cwkit::diagonal_limit(n);
    CHECK(seen.insert({lim.num(), lim.den()}).second);  // pairwise distinct
    // a/c equals the stern ratio b_(n-2)/b_(n-1)
    std::uint64_t m = (n - 1).convert_to<std::uint64_t>();
    CHECK(lim == Fraction(cwkit::stern(m - 1), cwkit::stern(m)));
  }
}

TEST_CASE("elements approach the limit strictly monotonically") {
  for (Int n = 2; n <= 64; ++n) {
    Fraction lim = cwkit::diagonal_limit(n);
    Fraction prev_gap = cwkit::abs_diff(cwkit::diagonal_element(n, 1), lim);
    for (Int j = 2; j <= 16; ++j) {
      Fraction gap = cwkit::abs_diff(cwkit::diagonal_element(n, j), lim);
      REQUIRE(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("diagonal families with index 2^n i - 2^(n-1) cover (n-1, n]") {
  for (int band = 1; band <= 3; ++band) {
    Int stride = cwkit::pow2(static_cast<std::uint64_t>(band));
    Int offset = cwkit::pow2(static_cast<std::uint64_t>(band - 1));
    for (std::uint64_t q = 1; q <= 12; ++q) {
      for (std::uint64_t p = (band - 1) * q + 1; p <= band * q; ++p) {
        if (cwkit::gcd(Int(p), Int(q)) != 1) continue;
        Fraction r(p, q);
        cwkit::NodeAddress addr = cwkit::address_of(r);
        // the containing diagonal is the node's position; it must lie in the band family
        REQUIRE((addr.position + offset) % stride == 0);
        Int i = (addr.position + offset) / stride;
        REQUIRE(i >= 1);
        Int index = stride * i - offset;
        auto j = cwkit::solve_membership(r, index);
        REQUIRE(j.has_value());
        REQUIRE(cwkit::diagonal_element(index, *j) == r);
      }
    }
  }
}
