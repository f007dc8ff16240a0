#include "citgen/coverage.hpp"

#include <algorithm>
#include <stdexcept>

namespace citgen {

namespace {

std::string label(std::span<const ValueIndex> values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += std::to_string(values[i]);
  }
  out += ')';
  return out;
}

std::string label(std::span<const ParamIndex> params) {
  std::vector<ValueIndex> tmp(params.begin(), params.end());
  return label(std::span<const ValueIndex>(tmp));
}

}  // namespace

CombinationMatrix::CombinationMatrix(const ParameterSpace& space, Strength t)
    : t_(t.t), radix_(space.maxDomainSize()) {
  t.validate(space);
  combos_ = parameterCombinations(space.size(), t_);
  strides_.assign(t_, 1);
  for (std::size_t i = t_; i-- > 1;) {
    strides_[i - 1] = strides_[i] * radix_;
  }
  columns_ = strides_[0] * radix_;
  if (combos_.size() > cells_.max_size() / columns_) {
    throw ModelError("combination matrix too large");
  }
  rowsWithParameter_.assign(space.size(), {});
  cells_.assign(combos_.size() * columns_, 0);
  for (std::size_t r = 0; r < combos_.size(); ++r) {
    for (ParamIndex p : combos_[r]) {
      rowsWithParameter_[p].push_back(r);
    }
    for (std::size_t c = 0; c < columns_; ++c) {
      std::size_t rest = c;
      for (std::size_t i = 0; i < t_; ++i) {
        const std::size_t v = rest / strides_[i];
        rest %= strides_[i];
        if (v >= space.domainSize(combos_[r][i])) {
          cells_[r * columns_ + c] = kAbsent;
          break;
        }
      }
    }
  }
  resetCounters();
}

std::vector<ValueIndex> CombinationMatrix::columnValues(std::size_t column) const {
  std::vector<ValueIndex> values(t_);
  for (std::size_t i = 0; i < t_; ++i) {
    values[i] = static_cast<ValueIndex>(column / strides_[i]);
    column %= strides_[i];
  }
  return values;
}

PartialTuple CombinationMatrix::cellTuple(std::size_t row, std::size_t column) const {
  const auto values = columnValues(column);
  std::vector<Assignment> assignments;
  assignments.reserve(t_);
  for (std::size_t i = 0; i < t_; ++i) {
    assignments.push_back({combos_.at(row)[i], values[i]});
  }
  return PartialTuple(std::move(assignments));
}

void CombinationMatrix::clean(const ForbiddenTupleSet& set) {
  for (std::size_t r = 0; r < combos_.size(); ++r) {
    for (std::size_t c = 0; c < columns_; ++c) {
      std::int32_t& cell = cells_[r * columns_ + c];
      if (cell == kAbsent) {
        continue;
      }
      if (cell != 0) {
        throw std::logic_error("clean() on a matrix that already has coverage");
      }
      if (tupleForbidden(cellTuple(r, c), set)) {
        cell = kAbsent;
      }
    }
  }
  resetCounters();
}

std::size_t CombinationMatrix::cellIndex(std::size_t row, std::span<const ValueIndex> tc) const {
  const auto& combo = combos_[row];
  std::size_t column = 0;
  for (std::size_t i = 0; i < t_; ++i) {
    column += static_cast<std::size_t>(tc[combo[i]]) * strides_[i];
  }
  return row * columns_ + column;
}

void CombinationMatrix::bump(std::size_t index, int direction) {
  std::int32_t& cell = cells_[index];
  if (direction > 0) {
    uncovered_ -= cell == 0 ? 1 : 0;
    multi_ += cell == 1 ? 1 : 0;
    ++cell;
  } else {
    uncovered_ += cell == 1 ? 1 : 0;
    multi_ -= cell == 2 ? 1 : 0;
    --cell;
  }
}

CoverageDelta CombinationMatrix::cover(std::span<const ValueIndex> tc) {
  CoverageDelta delta;
  delta.cells.reserve(combos_.size());
  for (std::size_t r = 0; r < combos_.size(); ++r) {
    const std::size_t index = cellIndex(r, tc);
    if (cells_[index] == kAbsent) {
      throw std::logic_error("cover() reached a forbidden or nonexistent combination " +
                             label(std::span<const ParamIndex>(combos_[r])));
    }
    delta.cells.push_back(index);
  }
  delta.previous.reserve(delta.cells.size());
  for (std::size_t index : delta.cells) {
    delta.previous.push_back(cells_[index]);
    bump(index, +1);
  }
  return delta;
}

CoverageDelta CombinationMatrix::uncover(std::span<const ValueIndex> tc) {
  CoverageDelta delta;
  delta.cells.reserve(combos_.size());
  for (std::size_t r = 0; r < combos_.size(); ++r) {
    const std::size_t index = cellIndex(r, tc);
    if (cells_[index] < 1) {
      throw std::logic_error("uncover() of a combination that is not covered");
    }
    delta.cells.push_back(index);
  }
  delta.previous.reserve(delta.cells.size());
  for (std::size_t index : delta.cells) {
    delta.previous.push_back(cells_[index]);
    bump(index, -1);
  }
  return delta;
}

void CombinationMatrix::revert(const CoverageDelta& delta) {
  for (std::size_t i = delta.cells.size(); i-- > 0;) {
    const std::size_t index = delta.cells[i];
    while (cells_[index] < delta.previous[i]) {
      bump(index, +1);
    }
    while (cells_[index] > delta.previous[i]) {
      bump(index, -1);
    }
  }
}

long CombinationMatrix::scoreDelta(std::span<const ValueIndex> before, std::span<const ValueIndex> after,
                                   std::span<const ParamIndex> changed) const {
  long delta = 0;
  auto visit = [&](std::size_t r) {
    const std::size_t from = cellIndex(r, before);
    const std::size_t to = cellIndex(r, after);
    if (from != to) {
      delta -= cells_[from] == 1 ? 1 : 0;
      delta += cells_[to] == 0 ? 1 : 0;
    }
  };
  if (changed.size() == 1) {
    for (std::size_t r : rowsWithParameter_[changed[0]]) {
      visit(r);
    }
  } else {
    for (std::size_t r = 0; r < combos_.size(); ++r) {
      visit(r);
    }
  }
  return delta;
}

void CombinationMatrix::replace(std::span<const ValueIndex> before, std::span<const ValueIndex> after,
                                std::span<const ParamIndex> changed) {
  auto visit = [&](std::size_t r) {
    const std::size_t from = cellIndex(r, before);
    const std::size_t to = cellIndex(r, after);
    if (from == to) {
      return;
    }
    if (cells_[from] < 1 || cells_[to] == kAbsent) {
      throw std::logic_error("replace() would move coverage out of a valid cell");
    }
    bump(from, -1);
    bump(to, +1);
  };
  if (changed.size() == 1) {
    for (std::size_t r : rowsWithParameter_[changed[0]]) {
      visit(r);
    }
  } else {
    for (std::size_t r = 0; r < combos_.size(); ++r) {
      visit(r);
    }
  }
}

std::vector<PartialTuple> CombinationMatrix::uncoveredTuples() const {
  std::vector<PartialTuple> out;
  out.reserve(uncovered_);
  for (std::size_t r = 0; r < combos_.size(); ++r) {
    for (std::size_t c = 0; c < columns_; ++c) {
      if (cells_[r * columns_ + c] == 0) {
        out.push_back(cellTuple(r, c));
      }
    }
  }
  return out;
}

kernels::CellTally CombinationMatrix::rescan() const { return kernels::tallyCells(cells_); }

bool CombinationMatrix::countersConsistent() const {
  const auto tally = rescan();
  return tally.coverable == coverable_ && tally.uncovered == uncovered_ && tally.multi == multi_;
}

void CombinationMatrix::resetCounters() {
  const auto tally = rescan();
  coverable_ = tally.coverable;
  uncovered_ = tally.uncovered;
  multi_ = tally.multi;
}

std::string CombinationMatrix::render() const {
  std::vector<std::string> columnLabels;
  columnLabels.reserve(columns_);
  for (std::size_t c = 0; c < columns_; ++c) {
    columnLabels.push_back(label(columnValues(c)));
  }
  std::size_t rowLabelWidth = 0;
  std::vector<std::string> rowLabels;
  for (const auto& combo : combos_) {
    rowLabels.push_back(label(std::span<const ParamIndex>(combo)));
    rowLabelWidth = std::max(rowLabelWidth, rowLabels.back().size());
  }
  auto pad = [](const std::string& s, std::size_t width) { return std::string(width - std::min(width, s.size()), ' ') + s; };

  std::string out(rowLabelWidth, ' ');
  for (const auto& l : columnLabels) {
    out += ' ' + pad(l, std::max<std::size_t>(l.size(), 2));
  }
  out += '\n';
  for (std::size_t r = 0; r < combos_.size(); ++r) {
    out += rowLabels[r] + std::string(rowLabelWidth - rowLabels[r].size(), ' ');
    for (std::size_t c = 0; c < columns_; ++c) {
      out += ' ' + pad(std::to_string(cells_[r * columns_ + c]), std::max<std::size_t>(columnLabels[c].size(), 2));
    }
    out += '\n';
  }
  return out;
}

}  // namespace citgen
