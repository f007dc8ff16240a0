#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "citgen/constraints.hpp"
#include "citgen/coverage.hpp"
#include "citgen/model.hpp"
#include "citgen/parser.hpp"
#include "citgen/rng.hpp"

namespace citgen {

// Test suite under construction: N rows of k value indices, stored row-major.
class SolutionMatrix {
 public:
  SolutionMatrix() = default;
  explicit SolutionMatrix(std::size_t width) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return width_ == 0 ? 0 : values_.size() / width_; }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const ValueIndex> row(std::size_t r) const { return {values_.data() + r * width_, width_}; }
  std::span<ValueIndex> row(std::size_t r) { return {values_.data() + r * width_, width_}; }
  ValueIndex at(std::size_t r, std::size_t c) const { return values_.at(r * width_ + c); }
  std::span<const ValueIndex> flat() const noexcept { return values_; }

  void append(std::span<const ValueIndex> tc);
  /// Removes row r and returns it; later rows move up by one.
  TestCase removeRow(std::size_t r);
  std::vector<TestCase> rows() const;

  bool operator==(const SolutionMatrix&) const = default;

 private:
  std::size_t width_ = 0;
  std::vector<ValueIndex> values_;
};

/// N1, N2 and N3 of the improvement phase.
enum class Neighborhood : std::uint8_t { CellChange = 0, ColumnSweep = 1, CoverTuple = 2 };

struct ImproveRounds {
  std::size_t count = 0;
};
struct TimeBudget {
  std::chrono::milliseconds duration{5000};
};

struct GeneratorConfig {
  Strength strength{2};
  std::uint64_t seed = 0;
  std::variant<ImproveRounds, TimeBudget> budget = TimeBudget{};
  std::size_t maxModifications = 600;
  std::array<double, 3> neighborhoodWeights{0.1, 0.1, 0.8};
  /// Phase A of initialization (best-of-two random rows by Hamming distance).
  bool randomPairPhase = true;
  DeriveLimits deriveLimits{};

  /// Throws ModelError on negative weights, weights not summing to 1, or
  /// maxModifications == 0.
  void validate() const;
};

/// Uniform row, resampled until valid; after a fixed number of misses the row
/// is built parameter by parameter instead. Throws UnsatisfiableError if no
/// valid row exists.
TestCase randomValidTestCase(const ParameterSpace& space, const ForbiddenTupleSet& set, Rng& rng);

/// Fills the kUnassigned entries of `partial` with random values such that no
/// forbidden tuple appears, backtracking on dead ends. nullopt if impossible.
std::optional<TestCase> completeRow(TestCase partial, const ParameterSpace& space, const ForbiddenTupleSet& set,
                                    Rng& rng);

enum class InitPhase : std::uint8_t { RandomPair, DisjointCover };

struct InitRowRecord {
  InitPhase phase;
  std::size_t uncoveredBefore;
  std::size_t multiCoveredBefore;
};

/// Builds a complete suite for a cleaned matrix. Rows are covered into
/// `matrix` as they are added. When `trace` is given, one record per row.
SolutionMatrix initialSolution(CombinationMatrix& matrix, const ParameterSpace& space, const ForbiddenTupleSet& set,
                               const GeneratorConfig& config, Rng& rng, std::vector<InitRowRecord>* trace = nullptr);

/// Largest parameter-disjoint subset of `tuples` (greedy, descending size
/// then canonical order) merged into one partial row that contains no
/// forbidden tuple.
TestCase mergeDisjointTuples(std::vector<PartialTuple> tuples, std::size_t width, const ForbiddenTupleSet& set);

struct MoveOutcome {
  bool changed = false;
  long scoreBefore = 0;
  long scoreAfter = 0;
  std::size_t candidates = 0;
};

// The three moves mutate `solution` and `matrix` together. Candidates whose
// row would contain a forbidden tuple are never considered; among the rest
// the one with the highest coverage score wins, ties broken by `rng`.

/// N1 at a fixed cell. The current value is one of the candidates.
MoveOutcome bestCellChangeAt(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                             const ForbiddenTupleSet& set, Rng& rng, std::size_t row, ParamIndex column);
/// N1 at a uniformly random cell.
MoveOutcome bestCellChange(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                           const ForbiddenTupleSet& set, Rng& rng);
/// N2: N1 applied to every row of one column, top to bottom.
MoveOutcome sweepColumnAt(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                          const ForbiddenTupleSet& set, Rng& rng, ParamIndex column);
MoveOutcome sweepColumn(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                        const ForbiddenTupleSet& set, Rng& rng);
/// N3: overwrite the single row that, once forced to contain `target`, gives
/// the best score.
MoveOutcome coverTupleWith(SolutionMatrix& solution, CombinationMatrix& matrix, const ForbiddenTupleSet& set,
                           Rng& rng, const PartialTuple& target);
/// N3 on a uniformly random uncovered tuple; no-op when all are covered.
MoveOutcome coverUncoveredTuple(SolutionMatrix& solution, CombinationMatrix& matrix, const ForbiddenTupleSet& set,
                                Rng& rng);

Neighborhood chooseNeighborhood(const std::array<double, 3>& weights, Rng& rng);

struct ImproveResult {
  SolutionMatrix solution;
  bool improved = false;
  std::size_t steps = 0;
};

/// One deletion attempt. `matrix` must hold the coverage of `solution`; on
/// success it is updated to the coverage of the returned smaller suite and
/// on failure it is left as it was.
ImproveResult improveOnce(const SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                          const ForbiddenTupleSet& set, const GeneratorConfig& config, Rng& rng);

struct GenerationStats {
  std::size_t coverableTuples = 0;
  std::size_t initialSize = 0;
  std::size_t improveIterations = 0;
  std::size_t forbiddenTuples = 0;
};

struct GenerationResult {
  SolutionMatrix suite;
  ForbiddenTupleSet forbidden;
  GenerationStats stats;
};

/// Whole pipeline: close constraints, build and clean the matrix, build an
/// initial suite, then shrink it until the budget runs out.
GenerationResult generate(const ModelFile& model, const GeneratorConfig& config);

}  // namespace citgen
