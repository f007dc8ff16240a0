#include "citgen/oracle.hpp"

#include <bit>
#include <cstdint>

namespace citgen::oracle {

namespace {

struct ResolvedLiteral {
  std::size_t parameter;
  ValueIndex value;
};

std::vector<std::vector<ResolvedLiteral>> resolve(const ModelFile& model) {
  std::vector<std::vector<ResolvedLiteral>> clauses;
  clauses.reserve(model.clauses.size());
  const auto& params = model.space.parameters();
  for (const Clause& clause : model.clauses) {
    auto& out = clauses.emplace_back();
    for (const Literal& lit : clause.literals) {
      bool found = false;
      for (std::size_t p = 0; p < params.size() && !found; ++p) {
        if (params[p].name != lit.parameter) {
          continue;
        }
        for (std::size_t v = 0; v < params[p].values.size(); ++v) {
          if (params[p].values[v] == lit.value) {
            out.push_back({p, static_cast<ValueIndex>(v)});
            found = true;
            break;
          }
        }
      }
      if (!found) {
        throw ModelError("clause literal " + lit.parameter + " != " + lit.value + " is not in the model");
      }
    }
  }
  return clauses;
}

// A clause is a disjunction of "parameter != value".
bool satisfies(const TestCase& row, const std::vector<ResolvedLiteral>& clause) {
  for (const ResolvedLiteral& lit : clause) {
    if (row[lit.parameter] != lit.value) {
      return true;
    }
  }
  return false;
}

std::optional<std::size_t> violated(const TestCase& row, const std::vector<std::vector<ResolvedLiteral>>& clauses) {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (!satisfies(row, clauses[i])) {
      return i;
    }
  }
  return std::nullopt;
}

// Parameter subsets of size t as bitmasks, built by extending smaller
// subsets one parameter at a time.
std::vector<std::uint64_t> subsetMasks(std::size_t k, std::size_t t) {
  if (k > 63) {
    throw EnumerationCapExceeded("brute-force oracle supports at most 63 parameters");
  }
  std::vector<std::uint64_t> masks{0};
  for (std::size_t size = 0; size < t; ++size) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t m : masks) {
      const std::size_t from = m == 0 ? 0 : static_cast<std::size_t>(64 - std::countl_zero(m));
      for (std::size_t p = from; p < k; ++p) {
        next.push_back(m | (std::uint64_t{1} << p));
      }
    }
    masks = std::move(next);
  }
  return masks;
}

PartialTuple restrict(const TestCase& row, std::uint64_t mask) {
  std::vector<Assignment> assignments;
  for (std::size_t p = 0; p < row.size(); ++p) {
    if ((mask >> p) & 1U) {
      assignments.push_back({static_cast<ParamIndex>(p), row[p]});
    }
  }
  return PartialTuple(std::move(assignments));
}

}  // namespace

std::optional<std::size_t> firstViolatedClause(const TestCase& row, const ModelFile& model) {
  if (!model.space.contains(row)) {
    throw ModelError("row does not belong to the parameter space");
  }
  return violated(row, resolve(model));
}

std::set<PartialTuple> enumerateCoverableTuples(const ModelFile& model, std::size_t t, std::size_t cap) {
  const std::size_t k = model.space.size();
  if (t < 1 || t > k) {
    throw ModelError("strength out of range");
  }
  const std::size_t total = model.space.cartesianSize();
  if (total > cap) {
    throw EnumerationCapExceeded("Cartesian product of " + std::to_string(total) + " rows exceeds cap " +
                                 std::to_string(cap));
  }
  const auto clauses = resolve(model);
  const auto masks = subsetMasks(k, t);
  std::set<PartialTuple> coverable;
  TestCase row(k, 0);
  for (std::size_t n = 0; n < total; ++n) {
    if (!violated(row, clauses)) {
      for (std::uint64_t mask : masks) {
        coverable.insert(restrict(row, mask));
      }
    }
    // Odometer increment, last parameter fastest.
    for (std::size_t p = k; p-- > 0;) {
      if (static_cast<std::size_t>(++row[p]) < model.space.domainSize(static_cast<ParamIndex>(p))) {
        break;
      }
      row[p] = 0;
    }
  }
  return coverable;
}

OracleReport verifyRows(const std::vector<TestCase>& suite, const ModelFile& model) {
  const auto clauses = resolve(model);
  OracleReport report;
  report.coverageChecked = false;
  for (std::size_t r = 0; r < suite.size(); ++r) {
    if (!model.space.contains(suite[r])) {
      throw ModelError("suite row " + std::to_string(r) + " does not belong to the parameter space");
    }
    if (auto c = violated(suite[r], clauses)) {
      report.invalidRows.push_back({r, *c});
    }
  }
  return report;
}

OracleReport verifySuite(const std::vector<TestCase>& suite, const ModelFile& model, std::size_t t,
                         std::size_t cap) {
  const auto coverable = enumerateCoverableTuples(model, t, cap);
  OracleReport report = verifyRows(suite, model);
  report.coverageChecked = true;
  report.coverableTupleCount = coverable.size();

  const auto masks = subsetMasks(model.space.size(), t);
  std::set<PartialTuple> seen;
  for (const TestCase& row : suite) {
    for (std::uint64_t mask : masks) {
      seen.insert(restrict(row, mask));
    }
  }
  for (const PartialTuple& tuple : coverable) {
    if (seen.count(tuple) != 0) {
      ++report.coveredTupleCount;
    } else {
      report.missingTuples.push_back(tuple);
    }
  }
  return report;
}

std::string formatReport(const OracleReport& report, const ModelFile& model) {
  std::string out;
  if (report.coverageChecked) {
    out += "coverable: " + std::to_string(report.coverableTupleCount) +
           ", covered: " + std::to_string(report.coveredTupleCount) + ", ";
  } else {
    out += "coverage: not checked, ";
  }
  out += "missing: " + std::to_string(report.missingTuples.size()) +
         ", invalid: " + std::to_string(report.invalidRows.size()) + "\n";
  for (const PartialTuple& tuple : report.missingTuples) {
    out += "  missing " + formatTuple(tuple, model.space) + "\n";
  }
  for (const InvalidRow& bad : report.invalidRows) {
    out += "  row " + std::to_string(bad.row) + " violates constraint " + std::to_string(bad.clause + 1) + "\n";
  }
  out += report.passed() ? "verification: PASS\n" : "verification: FAIL\n";
  return out;
}

}  // namespace citgen::oracle
