#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "cwkit/render.hpp"

using cwkit::Fraction;
using cwkit::Int;

TEST_CASE("fraction parsing") {
  CHECK(cwkit::parse_fraction("7/5") == Fraction(7, 5));
  CHECK(cwkit::parse_fraction("4/8") == Fraction(1, 2));
  auto [num, den] = cwkit::parse_fraction_parts("4/8");
  CHECK(num == 4);
  CHECK(den == 8);
  CHECK_THROWS_AS(cwkit::parse_fraction("7"), std::invalid_argument);
  CHECK_THROWS_AS(cwkit::parse_fraction("7/"), std::invalid_argument);
  CHECK_THROWS_AS(cwkit::parse_fraction("/5"), std::invalid_argument);
  CHECK_THROWS_AS(cwkit::parse_fraction("a/5"), std::invalid_argument);
  CHECK_THROWS_AS(cwkit::parse_fraction("-1/5"), std::invalid_argument);
  CHECK_THROWS_MATCHES(cwkit::parse_fraction("7/x5"), std::invalid_argument,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("x5")));
}

TEST_CASE("continued fraction parsing") {
  CHECK(cwkit::parse_cf_terms("[1; 2, 2]") == std::vector<Int>{1, 2, 2});
  CHECK(cwkit::parse_cf_terms("[1;2,2]") == std::vector<Int>{1, 2, 2});
  CHECK(cwkit::parse_cf_terms("[3]") == std::vector<Int>{3});
  CHECK(cwkit::parse_cf_terms("[0; 1, 1, 1, 2]") == std::vector<Int>{0, 1, 1, 1, 2});
  CHECK_THROWS_AS(cwkit::parse_cf_terms("1; 2"), std::invalid_argument);
  CHECK_THROWS_AS(cwkit::parse_cf_terms("[]"), std::invalid_argument);
  CHECK_THROWS_AS(cwkit::parse_cf_terms("[1; 2,]"), std::invalid_argument);
  CHECK_THROWS_AS(cwkit::parse_cf_terms("[1: 2]"), std::invalid_argument);
}

TEST_CASE("affine formulas") {
  CHECK(cwkit::affine_formula(cwkit::diagonal(1)) == "1/j");
  CHECK(cwkit::affine_formula(cwkit::diagonal(2)) == "(j+1)/j");
  CHECK(cwkit::affine_formula(cwkit::diagonal(6)) == "(3j+2)/(2j+1)");
  CHECK(cwkit::affine_formula(cwkit::diagonal(11)) == "(3j+2)/(5j+3)");
}

TEST_CASE("affine map formulas") {
  CHECK(cwkit::affine_map_formula(cwkit::qmark_diagonal_map(1)) == "x");
  CHECK(cwkit::affine_map_formula(cwkit::qmark_diagonal_map(2)) == "1+x");
  CHECK(cwkit::affine_map_formula(cwkit::qmark_diagonal_map(3)) == "1/2+x/4");
  CHECK(cwkit::affine_map_formula(cwkit::qmark_diagonal_map(12)) == "5/2+x/4");
}

TEST_CASE("level text rendering") {
  std::ostringstream out;
  cwkit::render_level_text(out, 3);
  CHECK(out.str() == "1/3 3/2 2/3 3/1\n");
  std::ostringstream one;
  cwkit::render_level_text(one, 1);
  CHECK(one.str() == "1/1\n");
}

TEST_CASE("level csv rendering") {
  std::ostringstream out;
  cwkit::render_level_csv(out, 4);
  std::istringstream lines(out.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "level,position,num,den");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 8);
  std::ostringstream again;
  cwkit::render_level_csv(again, 4);
  CHECK(again.str().starts_with("level,position,num,den\n4,1,1,4\n4,2,4,3\n"));
}

TEST_CASE("level json round-trips through a parser") {
  std::ostringstream out;
  cwkit::render_level_json(out, 6);
  auto parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 32);
  cwkit::LevelStream s = cwkit::LevelStream::first(6);
  for (const auto& item : parsed) {
    Fraction f(Int(item.at("num").get<std::string>()), Int(item.at("den").get<std::string>()));
    REQUIRE(f == s.value());
    s.advance();
  }
  // stable key order
  CHECK(out.str().starts_with("[{\"num\":\"1\",\"den\":\"6\"}"));
}

TEST_CASE("dot tree output is exact and deterministic") {
  std::ostringstream out;
  cwkit::render_dot_tree(out, 2);
  CHECK(out.str() ==
        "graph cw_tree {\n"
        "  node [shape=plaintext];\n"
        "  1 [label=\"1/1\"];\n"
        "  2 [label=\"1/2\"];\n"
        "  3 [label=\"2/1\"];\n"
        "  1 -- 2;\n"
        "  1 -- 3;\n"
        "}\n");
}

TEST_CASE("dot diagonal trees carry the figure labels") {
  std::ostringstream out;
  cwkit::render_dot_diagonals(out, 3);
  CHECK(out.str().find("\"(3j+2)/(2j+1)\"") != std::string::npos);
  CHECK(out.str().find("1 -- 2;") != std::string::npos);

  std::ostringstream qout;
  cwkit::render_dot_qmark_diagonals(qout, 3);
  CHECK(qout.str().find("\"1/2+x/4\"") != std::string::npos);
  CHECK(qout.str().find("\"x\"") != std::string::npos);

  std::ostringstream again;
  cwkit::render_dot_qmark_diagonals(again, 3);
  CHECK(again.str() == qout.str());
}
