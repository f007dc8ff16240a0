#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "citgen/model.hpp"
#include "citgen/parser.hpp"

namespace citgen::oracle {

// Brute-force reference checks. Everything here evaluates the original
// clauses on full test cases and never consults derived forbidden tuples or
// the combination matrix.

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

struct InvalidRow {
  std::size_t row = 0;
  std::size_t clause = 0;  // index into the model's clause list
};

struct OracleReport {
  std::size_t coverableTupleCount = 0;
  std::size_t coveredTupleCount = 0;
  std::vector<PartialTuple> missingTuples;
  std::vector<InvalidRow> invalidRows;
  /// False when the coverage half was skipped (rows checked only).
  bool coverageChecked = true;

  bool passed() const noexcept { return missingTuples.empty() && invalidRows.empty(); }
};

/// Index of the first clause the row violates, if any.
std::optional<std::size_t> firstViolatedClause(const TestCase& row, const ModelFile& model);

/// Every t-tuple that occurs in at least one full test case satisfying all
/// clauses. Throws EnumerationCapExceeded when the Cartesian product is
/// larger than `cap`.
std::set<PartialTuple> enumerateCoverableTuples(const ModelFile& model, std::size_t t,
                                                std::size_t cap = kDefaultEnumerationCap);

/// Row validity plus t-way coverage against enumerateCoverableTuples.
OracleReport verifySuite(const std::vector<TestCase>& suite, const ModelFile& model, std::size_t t,
                         std::size_t cap = kDefaultEnumerationCap);

/// Row validity only, for models too large to enumerate.
OracleReport verifyRows(const std::vector<TestCase>& suite, const ModelFile& model);

std::string formatReport(const OracleReport& report, const ModelFile& model);

}  // namespace citgen::oracle
