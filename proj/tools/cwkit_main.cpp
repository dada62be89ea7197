// cwkit command-line interface: level rows, DOT exports, point queries and
// the depth-parameterized identity verifier.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cwkit/cli.hpp"
#include "cwkit/cwkit.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact Calkin-Wilf tree toolkit"};
  app.require_subcommand(1);

  cwkit::CliConfig config;
  auto add_limit_options = [&config](CLI::App* cmd) {
    cmd->add_option("--max-depth", config.max_depth,
                    "depth ceiling for streaming commands (default 20)")
        ->envname("CWKIT_MAX_DEPTH");
  };

  auto* level = app.add_subcommand("level", "print the fractions of one level in order");
  int level_n = 1;
  std::string format = "text";
  level->add_option("n", level_n, "level number (the root is level 1)")->required();
  level->add_option("--format", format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  add_limit_options(level);

  auto* dot = app.add_subcommand("dot", "emit a Graphviz DOT rendering");
  std::string kind;
  int dot_depth = 5;
  dot->add_option("kind", kind, "tree, diagonals or qmark-diagonals")
      ->required()
      ->check(CLI::IsMember({"tree", "diagonals", "qmark-diagonals"}));
  dot->add_option("--depth", dot_depth, "levels to draw (default 5)");
  add_limit_options(dot);

  auto* query = app.add_subcommand(
      "query",
      "evaluate one query expression: path p/q | cf p/q | eval [a0;a1,...] | qmark p/q | "
      "diag n [j] | rank p/q | unrank k | member p/q n");
  query->prefix_command();  // everything after `query` is the expression, verbatim

  auto* verify = app.add_subcommand("verify", "run the identity suite and report");
  int verify_depth = 10;
  std::string select = "all";
  bool seed_check = false;
  verify->add_option("--depth", verify_depth, "test depth (default 10, must be >= 2)");
  verify->add_option("--select", select, "comma-separated identity names, or 'all'");
  verify->add_flag("--seed-check", seed_check, "also compare against the reference figures");
  verify->add_option("--qmark-depth", config.qmark_depth,
                     "depth ceiling for the exhaustive ?-suites (default 14)");
  verify->add_option("--jobs", config.jobs,
                     "run the selected checks on this many threads (report order is unchanged)");
  add_limit_options(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*level) {
      cwkit::cmd_level(std::cout, level_n, format, config);
    } else if (*dot) {
      cwkit::cmd_dot(std::cout, kind, dot_depth, config);
    } else if (*query) {
      std::vector<std::string> expr = query->remaining();
      cwkit::run_query(std::cout, std::cerr, expr);
    } else if (*verify) {
      return cwkit::cmd_verify(std::cout, std::cerr, verify_depth, select, seed_check, config);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
