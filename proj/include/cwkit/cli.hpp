#pragma once

#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cwkit/render.hpp"
#include "cwkit/verify.hpp"

namespace cwkit {

/// Resource limits for the streaming commands. The max depth ceiling is
/// flag/environment driven (CWKIT_MAX_DEPTH); exhaustive ?-walks inside the
/// verifier have their own, lower default.
struct CliConfig {
  int max_depth = 20;
  int qmark_depth = 14;
  int jobs = 1;
};

namespace cli_detail {
inline void guard_depth(int requested, const CliConfig& config, const char* what) {
  if (requested < 1) throw std::invalid_argument(std::string(what) + ": depth must be >= 1");
  if (requested > config.max_depth)
    throw std::runtime_error(std::string(what) + ": depth " + std::to_string(requested) +
                             " exceeds the limit " + std::to_string(config.max_depth) +
                             " (raise --max-depth or CWKIT_MAX_DEPTH)");
}
}  // namespace cli_detail

inline void cmd_level(std::ostream& out, int n, std::string_view format,
                      const CliConfig& config) {
  cli_detail::guard_depth(n, config, "level");
  if (format == "text") {
    render_level_text(out, n);
  } else if (format == "json") {
    render_level_json(out, n);
  } else if (format == "csv") {
    render_level_csv(out, n);
  } else {
    throw std::invalid_argument("level: unknown format '" + std::string(format) + "'");
  }
}

inline void cmd_dot(std::ostream& out, std::string_view kind, int depth,
                    const CliConfig& config) {
  cli_detail::guard_depth(depth, config, "dot");
  if (kind == "tree") {
    render_dot_tree(out, depth);
  } else if (kind == "diagonals") {
    render_dot_diagonals(out, depth);
  } else if (kind == "qmark-diagonals") {
    render_dot_qmark_diagonals(out, depth);
  } else {
    throw std::invalid_argument("dot: unknown kind '" + std::string(kind) + "'");
  }
}

/**
 * Query dispatch. Grammar:
 *   path p/q | cf p/q | eval [a0;a1,...] | qmark p/q | diag n [j]
 *   | rank p/q | unrank k | member p/q n
 * Answers go to `out`, one per line. Non-reduced fraction input is reduced
 * with a note on `notice`.
 */
inline void run_query(std::ostream& out, std::ostream& notice,
                      std::span<const std::string> tokens) {
  if (tokens.empty()) throw std::invalid_argument("query: empty expression");
  const std::string& cmd = tokens[0];

  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (tokens.size() - 1 < lo || tokens.size() - 1 > hi)
      throw std::invalid_argument("query: wrong number of arguments for '" + cmd + "'");
  };
  auto fraction_arg = [&notice](const std::string& token) {
    auto [num, den] = parse_fraction_parts(token);
    Fraction f(num, den);
    if (f.num() != num) notice << "note: " << token << " reduced to " << f.str() << "\n";
    return f;
  };

  if (cmd == "path") {
    arity(1, 1);
    Path p = path_of(fraction_arg(tokens[1]));
    out << (p.empty() ? "(root)" : p.word()) << "\n";
  } else if (cmd == "cf") {
    arity(1, 1);
    out << to_cf(fraction_arg(tokens[1])).str() << "\n";
  } else if (cmd == "eval") {
    arity(1, 8);  // a bracketed list may arrive split on spaces
    std::string joined;
    for (std::size_t i = 1; i < tokens.size(); ++i) joined += tokens[i];
    out << eval_cf_terms(parse_cf_terms(joined)).str() << "\n";
  } else if (cmd == "qmark") {
    arity(1, 1);
    out << qmark(fraction_arg(tokens[1])).str() << "\n";
  } else if (cmd == "diag") {
    arity(1, 2);
    Int n = parse_int(tokens[1], "diagonal index");
    if (tokens.size() == 2) {
      out << affine_formula(diagonal(n)) << "\n";
    } else {
      out << diagonal_element(n, parse_int(tokens[2], "diagonal position")).str() << "\n";
    }
  } else if (cmd == "rank") {
    arity(1, 1);
    out << rank_of(fraction_arg(tokens[1])) << "\n";
  } else if (cmd == "unrank") {
    arity(1, 1);
    out << unrank(parse_int(tokens[1], "rank")).str() << "\n";
  } else if (cmd == "member") {
    arity(2, 2);
    auto j = solve_membership(fraction_arg(tokens[1]), parse_int(tokens[2], "diagonal index"));
    if (j) {
      out << *j << "\n";
    } else {
      out << "absent\n";
    }
  } else {
    throw std::invalid_argument("query: unknown command '" + cmd + "'");
  }
}

/// Runs the verifier: JSON report to `json_out`, human table to `table_out`.
/// Returns the process exit code (0 iff everything selected passed).
inline int cmd_verify(std::ostream& json_out, std::ostream& table_out, int depth,
                      std::string_view select_csv, bool seed_check, const CliConfig& config) {
  if (depth < 2) throw std::invalid_argument("verify: depth must be >= 2");
  cli_detail::guard_depth(depth, config, "verify");

  std::vector<std::string> selection;
  std::string_view rest = select_csv;
  while (!rest.empty()) {
    std::size_t comma = rest.find(',');
    std::string_view name = rest.substr(0, comma);
    if (!name.empty()) selection.emplace_back(name);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }

  VerifyOptions options;
  options.depth = depth;
  options.qmark_depth = config.qmark_depth;
  options.seed_check = seed_check;
  options.jobs = config.jobs;
  VerifyReport report = run_verify(options, selection);
  render_report_json(json_out, report);
  render_report_table(table_out, report);
  return report.all_passed() ? 0 : 1;
}

}  // namespace cwkit
