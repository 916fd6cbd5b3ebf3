#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace markov_fuzzy::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kSemanticError = 3,
  kLimitError = 4,
};

enum class Format { Json, Csv };

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string formula;
  std::string vars;
  std::string marginals;
  Format format = Format::Json;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::optional<double> grid;
  double delta = 0.05;
  std::size_t steps = 11;
  std::string mode = "bounds";
  std::string quantifier = "exists";
  std::size_t tuple_length = 1;
};

/// Runs the tool with `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 17 significant digits with '.' as decimal separator, independent of the
/// global locale.
std::string format_double(double v);

}  // namespace markov_fuzzy::cli
