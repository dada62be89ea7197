#pragma once

#include <cctype>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwkit/continued_fraction.hpp"
#include "cwkit/diagonals.hpp"
#include "cwkit/fraction.hpp"
#include "cwkit/integer.hpp"
#include "cwkit/minkowski.hpp"
#include "cwkit/tree.hpp"

namespace cwkit {

// ---------------------------------------------------------------------------
// Parsing (the CLI's exact grammar lives here)
// ---------------------------------------------------------------------------

inline Int parse_int(std::string_view token, const char* what = "integer") {
  if (token.empty()) throw std::invalid_argument(std::string(what) + ": empty token");
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument(std::string(what) + ": bad token '" + std::string(token) + "'");
  }
  return Int(std::string(token));
}

/// "p/q" as a raw (num, den) pair; reduction and the reduced-input notice are
/// the caller's business.
inline std::pair<Int, Int> parse_fraction_parts(std::string_view token) {
  auto slash = token.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == token.size())
    throw std::invalid_argument("fraction: bad token '" + std::string(token) +
                                "' (expected p/q)");
  return {parse_int(token.substr(0, slash), "fraction numerator"),
          parse_int(token.substr(slash + 1), "fraction denominator")};
}

inline Fraction parse_fraction(std::string_view token) {
  auto [num, den] = parse_fraction_parts(token);
  return Fraction(std::move(num), std::move(den));
}

/// "[a0; a1, a2, ...]" or "[a0]"; interior whitespace is tolerated. Returns
/// the raw term list (which need not be canonical).
inline std::vector<Int> parse_cf_terms(std::string_view text) {
  auto bad = [&text]() {
    return std::invalid_argument("continued fraction: bad token '" + std::string(text) +
                                 "' (expected [a0; a1, a2, ...])");
  };
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.size() < 3 || compact.front() != '[' || compact.back() != ']') throw bad();
  std::string_view body(compact);
  body.remove_prefix(1);
  body.remove_suffix(1);

  std::vector<Int> terms;
  std::size_t sep = body.find(';');
  if (sep == std::string_view::npos) {
    terms.push_back(parse_int(body, "cf term"));
    return terms;
  }
  terms.push_back(parse_int(body.substr(0, sep), "cf term"));
  body.remove_prefix(sep + 1);
  for (;;) {
    std::size_t comma = body.find(',');
    if (comma == std::string_view::npos) {
      terms.push_back(parse_int(body, "cf term"));
      break;
    }
    terms.push_back(parse_int(body.substr(0, comma), "cf term"));
    body.remove_prefix(comma + 1);
  }
  return terms;
}

// ---------------------------------------------------------------------------
// Formula rendering
// ---------------------------------------------------------------------------

namespace detail {
inline std::string affine_side(const Int& coeff, const Int& constant) {
  if (coeff == 0) return constant.str();
  std::string j_part = coeff == 1 ? "j" : coeff.str() + "j";
  if (constant == 0) return j_part;
  return "(" + j_part + "+" + constant.str() + ")";
}
}  // namespace detail

/// "(3j+2)/(2j+1)", "1/j", "(j+1)/j"
inline std::string affine_formula(const Diagonal& d) {
  return detail::affine_side(d.a, d.b) + "/" + detail::affine_side(d.c, d.d);
}

/// "x", "1+x", "1/2+x/4"
inline std::string affine_map_formula(const AffineDyadicMap& map) {
  std::string x_part = map.shift == 0 ? "x" : "x/" + pow2(map.shift).str();
  if (map.offset.is_zero()) return x_part;
  return map.offset.str() + "+" + x_part;
}

// ---------------------------------------------------------------------------
// Level rendering
// ---------------------------------------------------------------------------

inline void render_level_text(std::ostream& out, int n) {
  LevelStream s = LevelStream::first(n);
  for (;;) {
    out << s.value_num() << '/' << s.value_den();
    if (!s.advance()) break;
    out << ' ';
  }
  out << '\n';
}

/// One-line JSON array of {"num": "...", "den": "..."} objects, decimal
/// strings so depth-30 values survive any consumer.
inline void render_level_json(std::ostream& out, int n) {
  LevelStream s = LevelStream::first(n);
  out << '[';
  for (;;) {
    out << "{\"num\":\"" << s.value_num() << "\",\"den\":\"" << s.value_den() << "\"}";
    if (!s.advance()) break;
    out << ',';
  }
  out << "]\n";
}

inline void render_level_csv(std::ostream& out, int n) {
  out << "level,position,num,den\n";
  LevelStream s = LevelStream::first(n);
  for (;;) {
    out << n << ',' << s.position() << ',' << s.value_num() << ',' << s.value_den() << '\n';
    if (!s.advance()) break;
  }
}

// ---------------------------------------------------------------------------
// DOT rendering (Graphviz, undirected). Node IDs are breadth-first ranks, so
// output is stable under regeneration and diffs cleanly.
// ---------------------------------------------------------------------------

inline void render_dot_tree(std::ostream& out, int depth) {
  out << "graph cw_tree {\n  node [shape=plaintext];\n";
  for (int n = 1; n <= depth; ++n) {
    LevelStream s = LevelStream::first(n);
    Int rank = pow2(static_cast<std::uint64_t>(n - 1));
    for (;;) {
      out << "  " << rank << " [label=\"" << s.value_num() << '/' << s.value_den() << "\"];\n";
      ++rank;
      if (!s.advance()) break;
    }
  }
  Int last = pow2(static_cast<std::uint64_t>(depth)) - 1;
  for (Int child = 2; child <= last; ++child) {
    out << "  " << child / 2 << " -- " << child << ";\n";
  }
  out << "}\n";
}

namespace detail {
template <class LabelFn>
void render_dot_diagonal_tree(std::ostream& out, const char* name, int depth, LabelFn label) {
  out << "graph " << name << " {\n  node [shape=plaintext];\n";
  Int last = pow2(static_cast<std::uint64_t>(depth));
  for (Int i = 1; i <= last; ++i) {
    out << "  " << i << " [label=\"" << label(i) << "\"];\n";
  }
  if (last >= 2) out << "  1 -- 2;\n";
  for (Int parent = 2; parent <= last; ++parent) {
    Int left = 2 * parent - 1, right = 2 * parent;
    if (left <= last) out << "  " << parent << " -- " << left << ";\n";
    if (right <= last) out << "  " << parent << " -- " << right << ";\n";
  }
  out << "}\n";
}
}  // namespace detail

/// Diagonal-family tree: L1 above L2, then Ln over L(2n-1), L(2n).
inline void render_dot_diagonals(std::ostream& out, int depth) {
  detail::render_dot_diagonal_tree(out, "cw_diagonals", depth,
                                   [](const Int& i) { return affine_formula(diagonal(i)); });
}

/// Same tree with each diagonal's question-mark image map as the label.
inline void render_dot_qmark_diagonals(std::ostream& out, int depth) {
  detail::render_dot_diagonal_tree(out, "qmark_diagonals", depth, [](const Int& i) {
    return affine_map_formula(qmark_diagonal_map(i));
  });
}

}  // namespace cwkit
