#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citgen/model.hpp"
#include "citgen/parser.hpp"

namespace citgen {

// Set of forbidden partial assignments. Tuples are kept sorted and unique;
// a per-parameter index lets validity checks after a single-cell change look
// only at the tuples that mention that parameter.
class ForbiddenTupleSet {
 public:
  ForbiddenTupleSet() = default;
  ForbiddenTupleSet(std::size_t parameterCount, std::vector<PartialTuple> tuples);

  std::size_t parameterCount() const noexcept { return byParameter_.size(); }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }
  const std::vector<PartialTuple>& tuples() const noexcept { return tuples_; }
  bool containsEmptyTuple() const noexcept { return !tuples_.empty() && tuples_.front().empty(); }

  /// Indices into tuples() of the tuples that assign parameter p.
  const std::vector<std::uint32_t>& involving(ParamIndex p) const { return byParameter_.at(p); }

  /// True when no tuple is contained in the row. Unassigned entries
  /// (kUnassigned) never match, so this also answers "is this partial row
  /// still free of forbidden tuples".
  bool admits(std::span<const ValueIndex> row) const;
  /// admits() restricted to tuples that mention `changed`; valid when the
  /// row was admitted before only that parameter changed.
  bool admitsAfterChange(std::span<const ValueIndex> row, ParamIndex changed) const;

  bool operator==(const ForbiddenTupleSet& other) const { return tuples_ == other.tuples_; }

 private:
  std::vector<PartialTuple> tuples_;
  std::vector<std::vector<std::uint32_t>> byParameter_;
};

struct DeriveLimits {
  /// Tuple-count ceiling for the closure.
  std::size_t maxTuples = 100'000;
  /// Ceiling on partial selections visited in one derive pass.
  std::size_t maxSelections = 50'000'000;
};

/// One application of the derive rule over every parameter. For a parameter
/// P with n values and a choice of one tuple per value of P, the union of
/// those tuples with P removed is forbidden too. Unions with conflicting
/// assignments, and unions already implied by the set, are skipped.
/// Throws UnsatisfiableError if the empty tuple is derived and
/// DerivationCapExceeded when a limit is passed.
ForbiddenTupleSet derivePass(const ForbiddenTupleSet& set, const ParameterSpace& space,
                             const DeriveLimits& limits = {});

/// Drops duplicates and every tuple that strictly contains another one.
ForbiddenTupleSet simplifyPass(const ForbiddenTupleSet& set);

/// derive + simplify until a round changes nothing.
ForbiddenTupleSet closeTuples(const std::vector<Clause>& clauses, const ParameterSpace& space,
                              const DeriveLimits& limits = {});
ForbiddenTupleSet closeTuples(const ForbiddenTupleSet& initial, const ParameterSpace& space,
                              const DeriveLimits& limits = {});

bool isValid(const TestCase& tc, const ForbiddenTupleSet& set);
bool tupleForbidden(const PartialTuple& tuple, const ForbiddenTupleSet& set);

/// Multi-line "{{p=v, ...},\n {...}}" rendering in canonical order.
std::string formatTupleSet(const ForbiddenTupleSet& set, const ParameterSpace& space);

/// One clause per tuple, each literal negating one assignment.
std::vector<Clause> tuplesToClauses(const ForbiddenTupleSet& set, const ParameterSpace& space);

}  // namespace citgen
