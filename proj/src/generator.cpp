#include "citgen/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "citgen/kernels.hpp"

namespace citgen {

void SolutionMatrix::append(std::span<const ValueIndex> tc) {
  if (tc.size() != width_) {
    throw ModelError("row width " + std::to_string(tc.size()) + " does not match suite width " +
                     std::to_string(width_));
  }
  values_.insert(values_.end(), tc.begin(), tc.end());
}

TestCase SolutionMatrix::removeRow(std::size_t r) {
  if (r >= size()) {
    throw std::out_of_range("removeRow index out of range");
  }
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(r * width_);
  TestCase removed(first, first + static_cast<std::ptrdiff_t>(width_));
  values_.erase(first, first + static_cast<std::ptrdiff_t>(width_));
  return removed;
}

std::vector<TestCase> SolutionMatrix::rows() const {
  std::vector<TestCase> out;
  out.reserve(size());
  for (std::size_t r = 0; r < size(); ++r) {
    const auto span = row(r);
    out.emplace_back(span.begin(), span.end());
  }
  return out;
}

void GeneratorConfig::validate() const {
  double sum = 0.0;
  for (double w : neighborhoodWeights) {
    if (!(w >= 0.0)) {
      throw ModelError("neighborhood weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ModelError("neighborhood weights must sum to 1");
  }
  if (maxModifications < 1) {
    throw ModelError("maxModifications must be at least 1");
  }
}

namespace {

constexpr int kUniformAttempts = 64;
constexpr int kDisjointCoverAttempts = 16;

bool fill(TestCase& row, std::vector<ParamIndex>& order, std::size_t depth, const ParameterSpace& space,
          const ForbiddenTupleSet& set, Rng& rng) {
  if (depth == order.size()) {
    return true;
  }
  const ParamIndex p = order[depth];
  std::vector<ValueIndex> values(space.domainSize(p));
  std::iota(values.begin(), values.end(), 0);
  rng.shuffle(values);
  for (ValueIndex v : values) {
    row[p] = v;
    if (set.admitsAfterChange(row, p) && fill(row, order, depth + 1, space, set, rng)) {
      return true;
    }
  }
  row[p] = kUnassigned;
  return false;
}

}  // namespace

std::optional<TestCase> completeRow(TestCase partial, const ParameterSpace& space, const ForbiddenTupleSet& set,
                                    Rng& rng) {
  if (partial.size() != space.size()) {
    throw ModelError("partial row width does not match the parameter space");
  }
  if (!set.admits(partial)) {
    return std::nullopt;
  }
  std::vector<ParamIndex> order;
  for (std::size_t p = 0; p < partial.size(); ++p) {
    if (partial[p] == kUnassigned) {
      order.push_back(static_cast<ParamIndex>(p));
    }
  }
  rng.shuffle(order);
  if (!fill(partial, order, 0, space, set, rng)) {
    return std::nullopt;
  }
  return partial;
}

TestCase randomValidTestCase(const ParameterSpace& space, const ForbiddenTupleSet& set, Rng& rng) {
  TestCase tc(space.size());
  for (int attempt = 0; attempt < kUniformAttempts; ++attempt) {
    for (std::size_t p = 0; p < tc.size(); ++p) {
      tc[p] = static_cast<ValueIndex>(rng.uniform(space.domainSize(static_cast<ParamIndex>(p))));
    }
    if (set.admits(tc)) {
      return tc;
    }
  }
  auto built = completeRow(TestCase(space.size(), kUnassigned), space, set, rng);
  if (!built) {
    throw UnsatisfiableError("unsatisfiable model: no test case avoids every forbidden tuple");
  }
  return *built;
}

TestCase mergeDisjointTuples(std::vector<PartialTuple> tuples, std::size_t width, const ForbiddenTupleSet& set) {
  std::stable_sort(tuples.begin(), tuples.end(), [](const PartialTuple& a, const PartialTuple& b) {
    if (a.size() != b.size()) {
      return a.size() > b.size();
    }
    return a < b;
  });
  TestCase row(width, kUnassigned);
  for (const PartialTuple& tuple : tuples) {
    const bool disjoint = std::all_of(tuple.begin(), tuple.end(),
                                      [&](const Assignment& a) { return row[a.parameter] == kUnassigned; });
    if (!disjoint) {
      continue;
    }
    for (const Assignment& a : tuple) {
      row[a.parameter] = a.value;
    }
    const bool admitted = std::all_of(tuple.begin(), tuple.end(),
                                      [&](const Assignment& a) { return set.admitsAfterChange(row, a.parameter); });
    if (!admitted) {
      for (const Assignment& a : tuple) {
        row[a.parameter] = kUnassigned;
      }
    }
  }
  return row;
}

SolutionMatrix initialSolution(CombinationMatrix& matrix, const ParameterSpace& space, const ForbiddenTupleSet& set,
                               const GeneratorConfig& config, Rng& rng, std::vector<InitRowRecord>* trace) {
  SolutionMatrix solution(space.size());
  while (matrix.uncoveredCount() != 0) {
    const std::size_t uncovered = matrix.uncoveredCount();
    const std::size_t multi = matrix.multiCoveredCount();
    TestCase row;
    InitPhase phase;
    if (config.randomPairPhase && uncovered > multi) {
      phase = InitPhase::RandomPair;
      TestCase first = randomValidTestCase(space, set, rng);
      TestCase second = randomValidTestCase(space, set, rng);
      const auto firstDistance = kernels::summedHamming(solution.flat(), first);
      const auto secondDistance = kernels::summedHamming(solution.flat(), second);
      row = secondDistance > firstDistance ? std::move(second) : std::move(first);
    } else {
      phase = InitPhase::DisjointCover;
      auto tuples = matrix.uncoveredTuples();
      std::optional<TestCase> built;
      for (int attempt = 0; attempt < kDisjointCoverAttempts && !built; ++attempt) {
        built = completeRow(mergeDisjointTuples(tuples, space.size(), set), space, set, rng);
        if (!built) {
          // Fall back to the single leading tuple, which is coverable by definition.
          tuples.resize(1);
        }
      }
      if (!built) {
        throw std::logic_error("could not complete a valid row around an uncovered combination");
      }
      row = std::move(*built);
    }
    if (trace != nullptr) {
      trace->push_back({phase, uncovered, multi});
    }
    matrix.cover(row);
    solution.append(row);
  }
  return solution;
}

namespace {

template <typename T>
const T& pickTied(const std::vector<T>& best, Rng& rng) {
  return best.size() == 1 ? best.front() : best[rng.uniform(best.size())];
}

}  // namespace

MoveOutcome bestCellChangeAt(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                             const ForbiddenTupleSet& set, Rng& rng, std::size_t row, ParamIndex column) {
  MoveOutcome outcome;
  outcome.scoreBefore = matrix.coverageScore();
  outcome.scoreAfter = outcome.scoreBefore;
  auto current = solution.row(row);
  const TestCase before(current.begin(), current.end());
  TestCase candidate = before;
  const ParamIndex changed[] = {column};

  long bestDelta = 0;
  std::vector<ValueIndex> best;
  for (std::size_t v = 0; v < space.domainSize(column); ++v) {
    candidate[column] = static_cast<ValueIndex>(v);
    if (candidate[column] != before[column] && !set.admitsAfterChange(candidate, column)) {
      continue;
    }
    ++outcome.candidates;
    const long delta = matrix.scoreDelta(before, candidate, changed);
    if (best.empty() || delta > bestDelta) {
      bestDelta = delta;
      best.assign(1, candidate[column]);
    } else if (delta == bestDelta) {
      best.push_back(candidate[column]);
    }
  }
  if (outcome.candidates <= 1) {
    return outcome;
  }
  const ValueIndex chosen = pickTied(best, rng);
  if (chosen == before[column]) {
    return outcome;
  }
  candidate[column] = chosen;
  matrix.replace(before, candidate, changed);
  current[column] = chosen;
  outcome.changed = true;
  outcome.scoreAfter = matrix.coverageScore();
  return outcome;
}

MoveOutcome bestCellChange(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                           const ForbiddenTupleSet& set, Rng& rng) {
  if (solution.empty()) {
    return {false, matrix.coverageScore(), matrix.coverageScore(), 0};
  }
  const std::size_t row = rng.uniform(solution.size());
  const auto column = static_cast<ParamIndex>(rng.uniform(solution.width()));
  return bestCellChangeAt(solution, matrix, space, set, rng, row, column);
}

MoveOutcome sweepColumnAt(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                          const ForbiddenTupleSet& set, Rng& rng, ParamIndex column) {
  MoveOutcome outcome;
  outcome.scoreBefore = matrix.coverageScore();
  for (std::size_t r = 0; r < solution.size(); ++r) {
    const MoveOutcome step = bestCellChangeAt(solution, matrix, space, set, rng, r, column);
    outcome.changed = outcome.changed || step.changed;
    outcome.candidates += step.candidates;
  }
  outcome.scoreAfter = matrix.coverageScore();
  return outcome;
}

MoveOutcome sweepColumn(SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                        const ForbiddenTupleSet& set, Rng& rng) {
  if (solution.empty()) {
    return {false, matrix.coverageScore(), matrix.coverageScore(), 0};
  }
  const auto column = static_cast<ParamIndex>(rng.uniform(solution.width()));
  return sweepColumnAt(solution, matrix, space, set, rng, column);
}

MoveOutcome coverTupleWith(SolutionMatrix& solution, CombinationMatrix& matrix, const ForbiddenTupleSet& set,
                           Rng& rng, const PartialTuple& target) {
  MoveOutcome outcome;
  outcome.scoreBefore = matrix.coverageScore();
  outcome.scoreAfter = outcome.scoreBefore;
  std::vector<ParamIndex> changed;
  for (const Assignment& a : target) {
    changed.push_back(a.parameter);
  }

  long bestDelta = 0;
  std::vector<std::size_t> best;
  TestCase candidate;
  for (std::size_t r = 0; r < solution.size(); ++r) {
    const auto before = solution.row(r);
    candidate.assign(before.begin(), before.end());
    bool differs = false;
    for (const Assignment& a : target) {
      differs = differs || candidate[a.parameter] != a.value;
      candidate[a.parameter] = a.value;
    }
    if (!differs) {
      continue;
    }
    const bool admitted = std::all_of(changed.begin(), changed.end(),
                                      [&](ParamIndex p) { return set.admitsAfterChange(candidate, p); });
    if (!admitted) {
      continue;
    }
    ++outcome.candidates;
    const long delta = matrix.scoreDelta(before, candidate, changed);
    if (best.empty() || delta > bestDelta) {
      bestDelta = delta;
      best.assign(1, r);
    } else if (delta == bestDelta) {
      best.push_back(r);
    }
  }
  if (best.empty()) {
    return outcome;
  }
  const std::size_t r = pickTied(best, rng);
  auto row = solution.row(r);
  const TestCase before(row.begin(), row.end());
  for (const Assignment& a : target) {
    row[a.parameter] = a.value;
  }
  matrix.replace(before, row, changed);
  outcome.changed = true;
  outcome.scoreAfter = matrix.coverageScore();
  return outcome;
}

MoveOutcome coverUncoveredTuple(SolutionMatrix& solution, CombinationMatrix& matrix, const ForbiddenTupleSet& set,
                                Rng& rng) {
  if (matrix.uncoveredCount() == 0 || solution.empty()) {
    return {false, matrix.coverageScore(), matrix.coverageScore(), 0};
  }
  // Walk to the chosen zero cell instead of materializing every tuple.
  std::size_t pick = rng.uniform(matrix.uncoveredCount());
  const auto cells = matrix.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == 0 && pick-- == 0) {
      const PartialTuple target = matrix.cellTuple(i / matrix.columnCount(), i % matrix.columnCount());
      return coverTupleWith(solution, matrix, set, rng, target);
    }
  }
  throw std::logic_error("uncovered counter disagrees with the matrix cells");
}

Neighborhood chooseNeighborhood(const std::array<double, 3>& weights, Rng& rng) {
  const double u = rng.unit();
  if (u < weights[0]) {
    return Neighborhood::CellChange;
  }
  if (u < weights[0] + weights[1]) {
    return Neighborhood::ColumnSweep;
  }
  return Neighborhood::CoverTuple;
}

ImproveResult improveOnce(const SolutionMatrix& solution, CombinationMatrix& matrix, const ParameterSpace& space,
                          const ForbiddenTupleSet& set, const GeneratorConfig& config, Rng& rng) {
  if (solution.empty()) {
    return {solution, false, 0};
  }
  SolutionMatrix candidate = solution;
  CombinationMatrix work = matrix;
  const TestCase deleted = candidate.removeRow(rng.uniform(candidate.size()));
  work.uncover(deleted);

  std::size_t step = 0;
  while (work.uncoveredCount() != 0) {
    if (step == config.maxModifications || candidate.empty()) {
      return {solution, false, step};
    }
    switch (chooseNeighborhood(config.neighborhoodWeights, rng)) {
      case Neighborhood::CellChange:
        bestCellChange(candidate, work, space, set, rng);
        break;
      case Neighborhood::ColumnSweep:
        sweepColumn(candidate, work, space, set, rng);
        break;
      case Neighborhood::CoverTuple:
        coverUncoveredTuple(candidate, work, set, rng);
        break;
    }
    ++step;
  }
  matrix = std::move(work);
  return {std::move(candidate), true, step};
}

GenerationResult generate(const ModelFile& model, const GeneratorConfig& config) {
  config.validate();
  config.strength.validate(model.space);
  const auto started = std::chrono::steady_clock::now();

  GenerationResult result;
  CombinationMatrix matrix(model.space, config.strength);
  result.forbidden = closeTuples(model.clauses, model.space, config.deriveLimits);
  matrix.clean(result.forbidden);
  result.stats.forbiddenTuples = result.forbidden.size();
  result.stats.coverableTuples = matrix.coverableCount();

  Rng rng(config.seed);
  result.suite = initialSolution(matrix, model.space, result.forbidden, config, rng);
  result.stats.initialSize = result.suite.size();

  auto budgetLeft = [&](std::size_t rounds) {
    if (const auto* r = std::get_if<ImproveRounds>(&config.budget)) {
      return rounds < r->count;
    }
    const auto& t = std::get<TimeBudget>(config.budget);
    return std::chrono::steady_clock::now() - started < t.duration;
  };
  while (!result.suite.empty() && budgetLeft(result.stats.improveIterations)) {
    ImproveResult step = improveOnce(result.suite, matrix, model.space, result.forbidden, config, rng);
    if (step.improved) {
      result.suite = std::move(step.solution);
    }
    ++result.stats.improveIterations;
  }
  return result;
}

}  // namespace citgen
