#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citgen/constraints.hpp"
#include "citgen/kernels.hpp"
#include "citgen/model.hpp"

namespace citgen {

/// Cells touched by one cover/uncover call with their counts beforehand.
struct CoverageDelta {
  std::vector<std::size_t> cells;
  std::vector<std::int32_t> previous;
};

// Coverage counters for every t-way value combination.
//
// Rows are the C(k,t) parameter combinations in lexicographic order. Columns
// are value vectors (v_0..v_{t-1}) read as a base-`maxDomainSize` number, so
// the layout is rectangular: cells whose value vector falls outside some
// parameter's domain hold kAbsent, as do forbidden combinations after clean().
// Every other cell counts the solution rows that contain that combination.
class CombinationMatrix {
 public:
  static constexpr std::int32_t kAbsent = -1;

  CombinationMatrix() = default;
  /// Throws ModelError unless 1 <= t <= k.
  CombinationMatrix(const ParameterSpace& space, Strength t);

  std::size_t strength() const noexcept { return t_; }
  std::size_t rowCount() const noexcept { return combos_.size(); }
  std::size_t columnCount() const noexcept { return columns_; }
  const std::vector<ParamIndex>& rowParameters(std::size_t row) const { return combos_.at(row); }
  std::int32_t cell(std::size_t row, std::size_t column) const { return cells_.at(row * columns_ + column); }
  std::span<const std::int32_t> cells() const noexcept { return cells_; }

  /// Value vector addressed by a column index.
  std::vector<ValueIndex> columnValues(std::size_t column) const;
  PartialTuple cellTuple(std::size_t row, std::size_t column) const;

  /// Marks every cell containing a forbidden tuple as kAbsent. Counts must be 0.
  void clean(const ForbiddenTupleSet& set);

  CoverageDelta cover(std::span<const ValueIndex> tc);
  CoverageDelta uncover(std::span<const ValueIndex> tc);
  /// Restores the counts recorded in a delta (newest delta first).
  void revert(const CoverageDelta& delta);

  /// Change in coverageScore() if a solution row went from `before` to
  /// `after`; only matrix rows that mention a parameter in `changed` are
  /// inspected. Both rows must be admitted by the forbidden set.
  long scoreDelta(std::span<const ValueIndex> before, std::span<const ValueIndex> after,
                  std::span<const ParamIndex> changed) const;
  /// Replaces a covered row by another in one step.
  void replace(std::span<const ValueIndex> before, std::span<const ValueIndex> after,
               std::span<const ParamIndex> changed);

  std::size_t coverableCount() const noexcept { return coverable_; }
  std::size_t uncoveredCount() const noexcept { return uncovered_; }
  std::size_t multiCoveredCount() const noexcept { return multi_; }
  long coverageScore() const noexcept { return static_cast<long>(coverable_) - static_cast<long>(uncovered_); }

  /// Uncovered cells as tuples, in row-major order.
  std::vector<PartialTuple> uncoveredTuples() const;
  /// Full recount of the cells; must equal the incremental counters.
  kernels::CellTally rescan() const;
  bool countersConsistent() const;

  /// Bordered text layout: "(0,1)" row labels, "(1,2)" column labels.
  std::string render() const;

 private:
  std::size_t cellIndex(std::size_t row, std::span<const ValueIndex> tc) const;
  void bump(std::size_t index, int direction);
  void resetCounters();

  std::size_t t_ = 0;
  std::size_t columns_ = 0;
  std::size_t radix_ = 0;
  std::vector<std::vector<ParamIndex>> combos_;
  std::vector<std::vector<std::size_t>> rowsWithParameter_;
  std::vector<std::size_t> strides_;  // place value of each position in a column index
  std::vector<std::int32_t> cells_;
  std::size_t coverable_ = 0;
  std::size_t uncovered_ = 0;
  std::size_t multi_ = 0;
};

}  // namespace citgen
