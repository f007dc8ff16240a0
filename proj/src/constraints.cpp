#include "citgen/constraints.hpp"

#include <algorithm>

namespace citgen {

ForbiddenTupleSet::ForbiddenTupleSet(std::size_t parameterCount, std::vector<PartialTuple> tuples)
    : tuples_(std::move(tuples)), byParameter_(parameterCount) {
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    for (const Assignment& a : tuples_[i]) {
      if (a.parameter >= parameterCount) {
        throw ModelError("forbidden tuple references parameter " + std::to_string(a.parameter) +
                         " outside the space");
      }
      byParameter_[a.parameter].push_back(static_cast<std::uint32_t>(i));
    }
  }
}

bool ForbiddenTupleSet::admits(std::span<const ValueIndex> row) const {
  return std::none_of(tuples_.begin(), tuples_.end(), [&](const PartialTuple& t) { return t.matches(row); });
}

bool ForbiddenTupleSet::admitsAfterChange(std::span<const ValueIndex> row, ParamIndex changed) const {
  for (std::uint32_t i : byParameter_.at(changed)) {
    if (tuples_[i].matches(row)) {
      return false;
    }
  }
  return true;
}

namespace {

std::string unsatisfiableMessage(const ParameterSpace& space, ParamIndex p,
                                 const std::vector<const PartialTuple*>& selection) {
  std::string msg = "unsatisfiable model: every value of parameter '" + space.parameter(p).name +
                    "' is forbidden (";
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (i > 0) {
      msg += ", ";
    }
    msg += formatTuple(*selection[i], space);
  }
  msg += ")";
  return msg;
}

// Depth-first enumeration of one tuple per value of a single parameter,
// accumulating the union of the chosen tuples (minus that parameter) in a
// dense row. Subtrees are cut as soon as the union conflicts or already
// contains a known forbidden tuple, since extending it cannot change that.
class SelectionSearch {
 public:
  SelectionSearch(const ForbiddenTupleSet& input, std::vector<PartialTuple>& added,
                  const ParameterSpace& space, const DeriveLimits& limits, std::size_t& visited)
      : input_(input), added_(added), space_(space), limits_(limits), visited_(visited),
        row_(space.size(), kUnassigned) {}

  void run(ParamIndex p) {
    param_ = p;
    const std::size_t n = space_.domainSize(p);
    lists_.assign(n, {});
    for (std::uint32_t i : input_.involving(p)) {
      const auto v = input_.tuples()[i].valueOf(p);
      lists_[static_cast<std::size_t>(*v)].push_back(i);
    }
    for (const auto& list : lists_) {
      if (list.empty()) {
        return;
      }
    }
    selection_.assign(n, nullptr);
    descend(0);
  }

 private:
  bool implied() const {
    if (!input_.admits(row_)) {
      return true;
    }
    return std::any_of(added_.begin(), added_.end(), [&](const PartialTuple& t) { return t.matches(row_); });
  }

  void descend(std::size_t level) {
    if (++visited_ > limits_.maxSelections) {
      throw DerivationCapExceeded("forbidden tuple derivation exceeded " +
                                  std::to_string(limits_.maxSelections) + " selections");
    }
    if (level == lists_.size()) {
      emit();
      return;
    }
    for (std::uint32_t index : lists_[level]) {
      const PartialTuple& tuple = input_.tuples()[index];
      std::vector<ParamIndex> assigned;
      bool conflict = false;
      for (const Assignment& a : tuple) {
        if (a.parameter == param_) {
          continue;
        }
        ValueIndex& slot = row_[a.parameter];
        if (slot == kUnassigned) {
          slot = a.value;
          assigned.push_back(a.parameter);
        } else if (slot != a.value) {
          conflict = true;
          break;
        }
      }
      if (!conflict && !implied()) {
        selection_[level] = &tuple;
        descend(level + 1);
      }
      for (ParamIndex p : assigned) {
        row_[p] = kUnassigned;
      }
    }
  }

  void emit() {
    std::vector<Assignment> assignments;
    for (std::size_t p = 0; p < row_.size(); ++p) {
      if (row_[p] != kUnassigned) {
        assignments.push_back({static_cast<ParamIndex>(p), row_[p]});
      }
    }
    if (assignments.empty()) {
      throw UnsatisfiableError(unsatisfiableMessage(space_, param_, selection_));
    }
    added_.emplace_back(std::move(assignments));
    if (input_.size() + added_.size() > limits_.maxTuples) {
      throw DerivationCapExceeded("forbidden tuple set exceeded " + std::to_string(limits_.maxTuples) +
                                  " tuples");
    }
  }

  const ForbiddenTupleSet& input_;
  std::vector<PartialTuple>& added_;
  const ParameterSpace& space_;
  const DeriveLimits& limits_;
  std::size_t& visited_;
  ParamIndex param_ = 0;
  std::vector<std::vector<std::uint32_t>> lists_;
  std::vector<const PartialTuple*> selection_;
  TestCase row_;
};

}  // namespace

ForbiddenTupleSet derivePass(const ForbiddenTupleSet& set, const ParameterSpace& space, const DeriveLimits& limits) {
  if (set.parameterCount() != space.size()) {
    throw ModelError("forbidden tuple set and parameter space disagree on parameter count");
  }
  if (set.containsEmptyTuple()) {
    throw UnsatisfiableError("unsatisfiable model: the empty tuple is forbidden");
  }
  std::vector<PartialTuple> added;
  std::size_t visited = 0;
  SelectionSearch search(set, added, space, limits, visited);
  for (std::size_t p = 0; p < space.size(); ++p) {
    search.run(static_cast<ParamIndex>(p));
  }
  if (added.empty()) {
    return set;
  }
  std::vector<PartialTuple> all = set.tuples();
  all.insert(all.end(), std::make_move_iterator(added.begin()), std::make_move_iterator(added.end()));
  return ForbiddenTupleSet(space.size(), std::move(all));
}

ForbiddenTupleSet simplifyPass(const ForbiddenTupleSet& set) {
  std::vector<const PartialTuple*> bySize;
  bySize.reserve(set.size());
  for (const PartialTuple& t : set.tuples()) {
    bySize.push_back(&t);
  }
  std::stable_sort(bySize.begin(), bySize.end(),
                   [](const PartialTuple* a, const PartialTuple* b) { return a->size() < b->size(); });
  std::vector<PartialTuple> kept;
  for (const PartialTuple* candidate : bySize) {
    const bool dominated = std::any_of(kept.begin(), kept.end(),
                                       [&](const PartialTuple& k) { return k.isSubsetOf(*candidate); });
    if (!dominated) {
      kept.push_back(*candidate);
    }
  }
  return ForbiddenTupleSet(set.parameterCount(), std::move(kept));
}

ForbiddenTupleSet closeTuples(const ForbiddenTupleSet& initial, const ParameterSpace& space,
                              const DeriveLimits& limits) {
  ForbiddenTupleSet current = initial;
  if (current.size() > limits.maxTuples) {
    throw DerivationCapExceeded("forbidden tuple set exceeded " + std::to_string(limits.maxTuples) + " tuples");
  }
  while (true) {
    ForbiddenTupleSet next = simplifyPass(derivePass(current, space, limits));
    if (next == current) {
      return next;
    }
    current = std::move(next);
  }
}

ForbiddenTupleSet closeTuples(const std::vector<Clause>& clauses, const ParameterSpace& space,
                              const DeriveLimits& limits) {
  return closeTuples(ForbiddenTupleSet(space.size(), clausesToTuples(clauses, space)), space, limits);
}

bool isValid(const TestCase& tc, const ForbiddenTupleSet& set) { return set.admits(tc); }

bool tupleForbidden(const PartialTuple& tuple, const ForbiddenTupleSet& set) {
  return std::any_of(set.tuples().begin(), set.tuples().end(),
                     [&](const PartialTuple& f) { return f.isSubsetOf(tuple); });
}

std::string formatTupleSet(const ForbiddenTupleSet& set, const ParameterSpace& space) {
  if (set.empty()) {
    return "{}";
  }
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) {
      out += ",\n ";
    }
    out += formatTuple(set.tuples()[i], space);
  }
  out += "}";
  return out;
}

std::vector<Clause> tuplesToClauses(const ForbiddenTupleSet& set, const ParameterSpace& space) {
  std::vector<Clause> out;
  out.reserve(set.size());
  for (const PartialTuple& t : set.tuples()) {
    Clause clause;
    for (const Assignment& a : t) {
      clause.literals.push_back({space.parameter(a.parameter).name, space.valueName(a.parameter, a.value)});
    }
    out.push_back(std::move(clause));
  }
  return out;
}

}  // namespace citgen
