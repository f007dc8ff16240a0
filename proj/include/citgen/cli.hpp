#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "citgen/oracle.hpp"

namespace citgen::cli {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kUnsatisfiable = 2,
  kIoFailure = 3,
  kVerificationFailure = 4,
};

enum class OutputFormat { Json, Csv, Text };

struct CliOptions {
  std::string inputPath;
  std::size_t strength = 2;
  /// Drawn from the OS when unset; the value used is always reported.
  std::optional<std::uint64_t> seed;
  /// At most one of the two budgets; neither means a 5000 ms time budget.
  std::optional<std::uint64_t> timeBudgetMs;
  std::optional<std::size_t> improveRounds;
  std::size_t maxModifications = 600;
  OutputFormat format = OutputFormat::Json;
  bool verify = false;
  /// Empty means standard output.
  std::string outputPath;
  bool dumpTuples = false;
  bool dumpMatrix = false;
  std::size_t enumerationCap = oracle::kDefaultEnumerationCap;
};

/// Runs the pipeline for already-parsed options. The suite goes to `out` (or
/// the output file); diagnostics, the seed echo and reports go to `err`.
int run(const CliOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and calls run().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace citgen::cli
