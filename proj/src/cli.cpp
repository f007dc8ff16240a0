#include "citgen/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "citgen/constraints.hpp"
#include "citgen/coverage.hpp"
#include "citgen/generator.hpp"
#include "citgen/parser.hpp"
#include "citgen/report.hpp"

namespace citgen::cli {

namespace {

std::uint64_t entropySeed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

GeneratorConfig toConfig(const CliOptions& options, std::uint64_t seed) {
  GeneratorConfig config;
  config.strength = Strength{options.strength};
  config.seed = seed;
  config.maxModifications = options.maxModifications;
  if (options.improveRounds) {
    config.budget = ImproveRounds{*options.improveRounds};
  } else {
    config.budget = TimeBudget{std::chrono::milliseconds(options.timeBudgetMs.value_or(5000))};
  }
  return config;
}

}  // namespace

int run(const CliOptions& options, std::ostream& out, std::ostream& err) {
  if (options.timeBudgetMs && options.improveRounds) {
    err << "error: --time-ms and --rounds are mutually exclusive\n";
    return kParseFailure;
  }
  ModelFile model;
  try {
    model = loadModel(options.inputPath);
  } catch (const ParseError& e) {
    err << options.inputPath << ":" << e.line() << ": error: " << e.message() << "\n";
    return kParseFailure;
  } catch (const ModelError& e) {
    err << options.inputPath << ": error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  }

  const std::uint64_t seed = options.seed ? *options.seed : entropySeed();
  const GeneratorConfig config = toConfig(options, seed);
  try {
    config.validate();
    config.strength.validate(model.space);
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kParseFailure;
  }
  if (options.format != OutputFormat::Json) {
    err << "seed: " << seed << "\n";
  }

  GenerationResult result;
  try {
    result = generate(model, config);
  } catch (const UnsatisfiableError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsatisfiable;
  } catch (const DerivationCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUnsatisfiable;
  }

  if (options.dumpTuples) {
    err << "forbidden tuples:\n" << formatTupleSet(result.forbidden, model.space) << "\n";
  }
  if (options.dumpMatrix) {
    CombinationMatrix matrix(model.space, config.strength);
    matrix.clean(result.forbidden);
    err << "combination matrix:\n" << matrix.render();
  }

  std::optional<oracle::OracleReport> report;
  if (options.verify) {
    const auto rows = result.suite.rows();
    try {
      report = oracle::verifySuite(rows, model, options.strength, options.enumerationCap);
    } catch (const EnumerationCapExceeded& e) {
      err << "warning: " << e.what() << "; checking row validity only\n";
      report = oracle::verifyRows(rows, model);
    }
    err << oracle::formatReport(*report, model);
  }

  std::string text;
  switch (options.format) {
    case OutputFormat::Json:
      text = suiteToJson(model, result, options.strength, seed, report ? &*report : nullptr);
      break;
    case OutputFormat::Csv:
      text = suiteToCsv(model.space, result.suite);
      break;
    case OutputFormat::Text:
      text = suiteToText(model.space, result.suite, options.strength, seed);
      break;
  }

  if (options.outputPath.empty()) {
    out << text;
    out.flush();
    if (!out) {
      err << "error: failed to write output\n";
      return kIoFailure;
    }
  } else {
    std::ofstream file(options.outputPath, std::ios::binary);
    file << text;
    file.close();
    if (!file) {
      err << "error: cannot write " << options.outputPath << "\n";
      return kIoFailure;
    }
  }
  if (report && !report->passed()) {
    return kVerificationFailure;
  }
  return kOk;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate a constrained t-way combinatorial test suite from a model file."};
  app.name("citgen");
  CliOptions options;
  std::string format = "json";

  app.add_option("model", options.inputPath, "Model file (PARAMETERS/CONSTRAINTS format)")->required();
  app.add_option("-t,--strength", options.strength, "Interaction strength t")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("-s,--seed", options.seed, "Random seed (default: drawn from the OS and reported)");
  auto* time = app.add_option("--time-ms", options.timeBudgetMs, "Improvement time budget in ms (default 5000)");
  auto* rounds = app.add_option("--rounds", options.improveRounds, "Fixed number of improvement rounds");
  time->excludes(rounds);
  rounds->excludes(time);
  app.add_option("-m,--max-modifications", options.maxModifications, "Moves per deletion attempt")
      ->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("-f,--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_flag("--verify", options.verify, "Check the suite with the brute-force oracle");
  app.add_option("-o,--output", options.outputPath, "Output file (default: standard output)");
  app.add_flag("--dump-tuples", options.dumpTuples, "Print the closed forbidden tuple set to stderr");
  app.add_flag("--dump-matrix", options.dumpMatrix, "Print the cleaned combination matrix to stderr");
  app.add_option("--enumeration-cap", options.enumerationCap, "Largest Cartesian product --verify enumerates")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kParseFailure;
  }
  options.format = format == "csv" ? OutputFormat::Csv : format == "text" ? OutputFormat::Text : OutputFormat::Json;
  return run(options, out, err);
}

}  // namespace citgen::cli
