#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citgen/errors.hpp"

namespace citgen {

using ParamIndex = std::uint32_t;
using ValueIndex = std::int32_t;

/// Marks a parameter that has not been assigned yet in a partially built row.
inline constexpr ValueIndex kUnassigned = -1;

/// A full assignment: values[p] is the value index of parameter p.
using TestCase = std::vector<ValueIndex>;

struct Parameter {
  std::string name;
  std::vector<std::string> values;

  bool operator==(const Parameter&) const = default;
};

// Ordered parameters with ordered value domains. Every index used elsewhere
// in the library is positional within this space.
class ParameterSpace {
 public:
  ParameterSpace() = default;
  explicit ParameterSpace(std::vector<Parameter> parameters);

  std::size_t size() const noexcept { return parameters_.size(); }
  std::size_t domainSize(ParamIndex p) const { return parameters_.at(p).values.size(); }
  std::size_t maxDomainSize() const noexcept { return maxDomain_; }
  const Parameter& parameter(ParamIndex p) const { return parameters_.at(p); }
  const std::vector<Parameter>& parameters() const noexcept { return parameters_; }

  std::optional<ParamIndex> findParameter(std::string_view name) const;
  std::optional<ValueIndex> findValue(ParamIndex p, std::string_view value) const;

  const std::string& valueName(ParamIndex p, ValueIndex v) const;
  bool contains(const TestCase& tc) const;
  /// Product of all domain sizes, saturating at SIZE_MAX.
  std::size_t cartesianSize() const noexcept;

  bool operator==(const ParameterSpace& other) const { return parameters_ == other.parameters_; }

 private:
  std::vector<Parameter> parameters_;
  std::size_t maxDomain_ = 0;
};

struct Assignment {
  ParamIndex parameter = 0;
  ValueIndex value = 0;

  auto operator<=>(const Assignment&) const = default;
};

// Partial assignment kept in canonical (ascending parameter) order.
class PartialTuple {
 public:
  PartialTuple() = default;
  /// Sorts the assignments; throws ModelError if two share a parameter
  /// (an exact duplicate assignment is collapsed).
  explicit PartialTuple(std::vector<Assignment> assignments);

  /// Like the constructor but returns nullopt instead of throwing when two
  /// assignments give different values to one parameter.
  static std::optional<PartialTuple> tryMake(std::vector<Assignment> assignments);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const std::vector<Assignment>& assignments() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  std::optional<ValueIndex> valueOf(ParamIndex p) const;
  bool contains(const Assignment& a) const;
  bool isSubsetOf(const PartialTuple& other) const;
  /// True when every assignment agrees with the row (kUnassigned never matches).
  bool matches(std::span<const ValueIndex> row) const;
  PartialTuple without(ParamIndex p) const;

  auto operator<=>(const PartialTuple&) const = default;
  bool operator==(const PartialTuple&) const = default;

 private:
  std::vector<Assignment> items_;
};

struct Strength {
  std::size_t t = 2;

  /// Throws ModelError unless 1 <= t <= k.
  void validate(const ParameterSpace& space) const;
};

/// C(n, r) saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t r) noexcept;

/// All r-subsets of {0..n-1} in ascending lexicographic order.
std::vector<std::vector<ParamIndex>> parameterCombinations(std::size_t n, std::size_t r);

/// Restrictions of a full test case to each t-subset of parameters, in
/// ascending lexicographic order of the parameter subsets.
std::vector<PartialTuple> tTuplesOf(const TestCase& tc, Strength t, const ParameterSpace& space);

std::size_t hammingDistance(std::span<const ValueIndex> a, std::span<const ValueIndex> b);

/// "{p=v, q=w}" using names from the space.
std::string formatTuple(const PartialTuple& tuple, const ParameterSpace& space);

}  // namespace citgen
