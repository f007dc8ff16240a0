// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citgen/cli.hpp"
#include "citgen/constraints.hpp"
#include "citgen/coverage.hpp"
#include "citgen/generator.hpp"
#include "citgen/oracle.hpp"
#include "test_support.hpp"

namespace citgen::acceptance {
namespace {

using Clock = std::chrono::steady_clock;
using testing::sampleModel;
using testing::tupleOf;

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) {
      detail = why;
    }
    passed = false;
  }
};

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CorpusEntry {
  std::string name;
  ModelFile model;
  std::size_t strength;
};

bool satisfiable(const ModelFile& model) {
  for (const auto& tc : testing::allTestCases(model.space)) {
    if (testing::satisfiesClauses(tc, model)) {
      return true;
    }
  }
  return false;
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"sample t=2", sampleModel(), 2});
  out.push_back({"sample t=3", sampleModel(), 3});
  out.push_back({"unconstrained 3^4 t=2", testing::uniformModel({3, 3, 3, 3}), 2});
  out.push_back({"mixed 2^3 3^2 4 t=2", testing::uniformModel({2, 2, 2, 3, 3, 4}), 2});
  // Random constrained models with 4..8 parameters, kept only if satisfiable
  // and actually constrained.
  Rng rng(20260101);
  std::size_t index = 0;
  while (out.size() < 12) {
    ModelFile model = testing::randomModel(rng, 8, 8);
    if (model.space.size() < 4 || model.clauses.empty() || !satisfiable(model)) {
      continue;
    }
    const std::size_t t = (index % 4 == 3) ? 3 : 2;
    out.push_back({"random #" + std::to_string(index) + " k=" + std::to_string(model.space.size()) +
                       " clauses=" + std::to_string(model.clauses.size()) + " t=" + std::to_string(t),
                   std::move(model), t});
    ++index;
  }
  return out;
}

GeneratorConfig roundsConfig(std::size_t t, std::uint64_t seed, std::size_t rounds) {
  GeneratorConfig config;
  config.strength = Strength{t};
  config.seed = seed;
  config.budget = ImproveRounds{rounds};
  return config;
}

Outcome closedTuplesOfSampleModel() {
  Outcome o;
  const auto start = Clock::now();
  const auto model = sampleModel();
  const auto closed = closeTuples(model.clauses, model.space);
  const ForbiddenTupleSet expected(model.space.size(),
                                   {tupleOf(model.space, {{"color", "black"}}),
                                    tupleOf(model.space, {{"color", "gold"}, {"coating", "cathodic"}}),
                                    tupleOf(model.space, {{"material", "aluminum"}, {"color", "gold"}})});
  if (!(closed == expected)) {
    o.fail("got " + formatTupleSet(closed, model.space));
  }
  const double s = secondsSince(start);
  if (s >= 1.0) {
    o.fail("took " + std::to_string(s) + " s");
  }
  if (o.passed) {
    o.detail = "3 tuples, exact";
  }
  return o;
}

Outcome cleanedMatrixOfSampleModel() {
  Outcome o;
  const auto start = Clock::now();
  const auto model = sampleModel();
  CombinationMatrix m(model.space, Strength{2});
  m.clean(closeTuples(model.clauses, model.space));
  if (m.rowCount() != 10 || m.columnCount() != 9) {
    o.fail("shape " + std::to_string(m.rowCount()) + "x" + std::to_string(m.columnCount()));
    return o;
  }
  for (std::size_t r = 0; r < 10; ++r) {
    for (std::size_t c = 0; c < 9; ++c) {
      if (m.cell(r, c) != testing::kSampleMatrixCells[r][c]) {
        o.fail("cell (" + std::to_string(r) + "," + std::to_string(c) + ") = " + std::to_string(m.cell(r, c)));
      }
    }
  }
  const double s = secondsSince(start);
  if (s >= 1.0) {
    o.fail("took " + std::to_string(s) + " s");
  }
  if (o.passed) {
    o.detail = "10x9, 65 coverable cells";
  }
  return o;
}

struct CorpusRuns {
  Outcome completeness;
  Outcome agreement;
  Outcome shrinking;
};

CorpusRuns runCorpus(const std::vector<CorpusEntry>& models) {
  CorpusRuns runs;
  constexpr std::uint64_t kSeeds = 5;
  std::size_t suites = 0;
  for (const auto& entry : models) {
    // Oracle/engine agreement on the coverable set.
    const auto coverable = oracle::enumerateCoverableTuples(entry.model, entry.strength);
    CombinationMatrix m(entry.model.space, Strength{entry.strength});
    m.clean(closeTuples(entry.model.clauses, entry.model.space));
    const auto cells = m.uncoveredTuples();
    if (std::set<PartialTuple>(cells.begin(), cells.end()) != coverable) {
      runs.agreement.fail(entry.name + ": engine " + std::to_string(cells.size()) + " cells vs oracle " +
                          std::to_string(coverable.size()) + "\n" + emitModel(entry.model));
    }
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      const auto result = generate(entry.model, roundsConfig(entry.strength, seed, 40));
      const auto report = oracle::verifySuite(result.suite.rows(), entry.model, entry.strength);
      if (!report.passed()) {
        runs.completeness.fail(entry.name + " seed " + std::to_string(seed) + ": " +
                               oracle::formatReport(report, entry.model));
      }
      if (result.suite.size() > result.stats.initialSize) {
        runs.shrinking.fail(entry.name + " seed " + std::to_string(seed) + ": grew from " +
                            std::to_string(result.stats.initialSize) + " to " + std::to_string(result.suite.size()));
      }
      ++suites;
    }
  }
  if (runs.completeness.passed) {
    runs.completeness.detail = std::to_string(models.size()) + " models, " + std::to_string(suites) +
                               " suites, 0 missing, 0 invalid";
  }
  if (runs.agreement.passed) {
    runs.agreement.detail = std::to_string(models.size()) + " models agree";
  }
  return runs;
}

Outcome sizeProperties(Outcome corpusShrinking) {
  Outcome o = corpusShrinking;
  GeneratorConfig config;
  config.strength = Strength{2};
  config.seed = 12345;
  config.budget = TimeBudget{std::chrono::milliseconds(5000)};
  const auto result = generate(testing::uniformModel({3, 3, 3, 3}), config);
  const std::size_t n = result.suite.size();
  if (n < 9) {
    o.fail("3^4 suite has " + std::to_string(n) + " rows, below the lower bound 9");
  }
  if (n > result.stats.initialSize) {
    o.fail("3^4 suite grew");
  }
  if (o.passed) {
    o.detail = "3^4 t=2: initial " + std::to_string(result.stats.initialSize) + " -> final " + std::to_string(n) +
               (n <= 12 ? " (within informational target 12)" : " (above informational target 12)");
  }
  return o;
}

Outcome neighborhoodDistribution() {
  Outcome o;
  const auto start = Clock::now();
  Rng rng(606);
  const GeneratorConfig defaults;
  std::array<int, 3> counts{};
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    ++counts[static_cast<std::size_t>(chooseNeighborhood(defaults.neighborhoodWeights, rng))];
  }
  const std::array<double, 3> expected{0.1, 0.1, 0.8};
  std::ostringstream detail;
  for (std::size_t i = 0; i < 3; ++i) {
    const double freq = counts[i] / static_cast<double>(kDraws);
    detail << (i ? ", " : "") << "N" << i + 1 << "=" << freq;
    if (std::abs(freq - expected[i]) > 0.02) {
      o.fail("N" + std::to_string(i + 1) + " frequency " + std::to_string(freq));
    }
  }
  if (secondsSince(start) >= 1.0) {
    o.fail("too slow");
  }
  if (o.passed) {
    o.detail = detail.str();
  }
  return o;
}

std::string writeTemp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

Outcome determinism() {
  Outcome o;
  cli::CliOptions options;
  options.inputPath = writeTemp("citgen_acceptance_sample.cit", testing::kSampleModelText);
  options.strength = 2;
  options.seed = 2718;
  options.improveRounds = 50;
  options.maxModifications = 600;
  std::ostringstream first;
  std::ostringstream second;
  std::ostringstream err;
  const int a = cli::run(options, first, err);
  const int b = cli::run(options, second, err);
  std::filesystem::remove(options.inputPath);
  if (a != 0 || b != 0) {
    o.fail("exit codes " + std::to_string(a) + ", " + std::to_string(b) + ": " + err.str());
  } else if (first.str() != second.str()) {
    o.fail("JSON output differs between runs");
  } else {
    o.detail = std::to_string(first.str().size()) + " identical bytes";
  }
  return o;
}

Outcome phaseSwitchLaw() {
  Outcome o;
  Rng modelRng(99);
  std::size_t models = 0;
  std::size_t rows = 0;
  std::size_t disjointRows = 0;
  while (models < 100) {
    const ModelFile model = testing::randomModel(modelRng, 7, 6);
    ForbiddenTupleSet set;
    try {
      set = closeTuples(model.clauses, model.space);
    } catch (const UnsatisfiableError&) {
      continue;
    }
    const std::size_t t = std::min<std::size_t>(2, model.space.size());
    CombinationMatrix m(model.space, Strength{t});
    m.clean(set);
    Rng rng(models);
    std::vector<InitRowRecord> trace;
    const auto suite = initialSolution(m, model.space, set, roundsConfig(t, models, 0), rng, &trace);
    for (const auto& record : trace) {
      ++rows;
      if (record.phase == InitPhase::DisjointCover) {
        ++disjointRows;
        if (record.uncoveredBefore > record.multiCoveredBefore) {
          o.fail("disjoint-cover row with uncovered " + std::to_string(record.uncoveredBefore) + " > multi " +
                 std::to_string(record.multiCoveredBefore));
        }
      }
    }
    if (m.uncoveredCount() != 0 || trace.size() != suite.size()) {
      o.fail("initial solution incomplete");
    }
    ++models;
  }
  if (o.passed) {
    o.detail = "100 models, " + std::to_string(rows) + " rows, " + std::to_string(disjointRows) + " disjoint-cover rows";
  }
  return o;
}

Outcome unsatisfiableExit() {
  Outcome o;
  cli::CliOptions options;
  options.inputPath = writeTemp("citgen_acceptance_unsat.cit",
                                "PARAMETERS\n"
                                "engine[diesel, petrol]\n"
                                "tank[small]\n"
                                "CONSTRAINTS\n"
                                "engine != diesel || tank != small\n"
                                "engine != petrol\n");
  options.improveRounds = 1;
  options.seed = 1;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(options, out, err);
  std::filesystem::remove(options.inputPath);
  const std::string message = err.str();
  if (code != cli::kUnsatisfiable) {
    o.fail("exit code " + std::to_string(code));
  }
  if (message.find("unsatisfiable") == std::string::npos || message.find("'engine'") == std::string::npos) {
    o.fail("diagnostic: " + message);
  }
  if (o.passed) {
    o.detail = "exit 2: " + message.substr(0, message.find('\n'));
  }
  return o;
}

}  // namespace
}  // namespace citgen::acceptance

int main() {
  using namespace citgen::acceptance;
  int failures = 0;
  auto report = [&](int id, const std::string& name, const Outcome& o) {
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << name << ": " << o.detail << std::endl;
    failures += o.passed ? 0 : 1;
  };

  report(1, "closed forbidden tuples of the sample model", closedTuplesOfSampleModel());
  report(2, "cleaned combination matrix of the sample model", cleanedMatrixOfSampleModel());
  const auto models = corpus();
  const auto runs = runCorpus(models);
  report(3, "coverage completeness over the corpus", runs.completeness);
  report(4, "oracle/engine agreement on coverable tuples", runs.agreement);
  report(5, "suite size properties", sizeProperties(runs.shrinking));
  report(6, "neighborhood selection frequencies", neighborhoodDistribution());
  report(7, "byte-identical output for identical inputs", determinism());
  report(8, "initialization phase-switch law", phaseSwitchLaw());
  report(9, "unsatisfiable model exits with code 2", unsatisfiableExit());

  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
