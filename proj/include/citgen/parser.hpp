#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citgen/model.hpp"

namespace citgen {

/// `parameter != value`; the only literal form the model format has.
struct Literal {
  std::string parameter;
  std::string value;

  bool operator==(const Literal&) const = default;
};

/// Disjunction of literals; one constraint line.
struct Clause {
  std::vector<Literal> literals;
  std::size_t line = 0;  // source line, 0 when built in code

  bool operator==(const Clause& other) const { return literals == other.literals; }
};

struct ModelFile {
  ParameterSpace space;
  std::vector<Clause> clauses;

  bool operator==(const ModelFile&) const = default;
};

/// Parses the PARAMETERS/CONSTRAINTS text format. Throws ParseError.
///
///   PARAMETERS
///   color[black, gold, red]
///   shape[square, circle]
///
///   CONSTRAINTS
///   color != black || shape != square
ModelFile parseModel(std::string_view text);

/// Reads and parses a file. Throws std::ios_base::failure on I/O errors.
ModelFile loadModel(const std::string& path);

/// Canonical text of a model; parseModel(emitModel(m)) == m.
std::string emitModel(const ModelFile& model);

/// The forbidden tuple a clause excludes, or nullopt when the clause is
/// satisfied by every test case (it names two values of one parameter).
/// The clause must already be validated against `space`.
std::optional<PartialTuple> clauseToTuple(const Clause& clause, const ParameterSpace& space);

/// Non-vacuous clause tuples in clause order.
std::vector<PartialTuple> clausesToTuples(const std::vector<Clause>& clauses, const ParameterSpace& space);

}  // namespace citgen
