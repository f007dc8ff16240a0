#include "citgen/model.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "citgen/kernels.hpp"

namespace citgen {

ParameterSpace::ParameterSpace(std::vector<Parameter> parameters) : parameters_(std::move(parameters)) {
  if (parameters_.empty()) {
    throw ModelError("a model needs at least one parameter");
  }
  std::unordered_set<std::string_view> names;
  for (const Parameter& p : parameters_) {
    if (p.name.empty()) {
      throw ModelError("parameter name must not be empty");
    }
    if (!names.insert(p.name).second) {
      throw ModelError("duplicate parameter '" + p.name + "'");
    }
    if (p.values.empty()) {
      throw ModelError("parameter '" + p.name + "' has no values");
    }
    std::unordered_set<std::string_view> values;
    for (const std::string& v : p.values) {
      if (v.empty()) {
        throw ModelError("parameter '" + p.name + "' has an empty value");
      }
      if (!values.insert(v).second) {
        throw ModelError("duplicate value '" + v + "' in parameter '" + p.name + "'");
      }
    }
    maxDomain_ = std::max(maxDomain_, p.values.size());
  }
}

std::optional<ParamIndex> ParameterSpace::findParameter(std::string_view name) const {
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    if (parameters_[i].name == name) {
      return static_cast<ParamIndex>(i);
    }
  }
  return std::nullopt;
}

std::optional<ValueIndex> ParameterSpace::findValue(ParamIndex p, std::string_view value) const {
  const auto& values = parameter(p).values;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == value) {
      return static_cast<ValueIndex>(i);
    }
  }
  return std::nullopt;
}

const std::string& ParameterSpace::valueName(ParamIndex p, ValueIndex v) const {
  const auto& values = parameter(p).values;
  if (v < 0 || static_cast<std::size_t>(v) >= values.size()) {
    throw ModelError("value index " + std::to_string(v) + " out of range for parameter '" +
                     parameter(p).name + "'");
  }
  return values[static_cast<std::size_t>(v)];
}

bool ParameterSpace::contains(const TestCase& tc) const {
  if (tc.size() != parameters_.size()) {
    return false;
  }
  for (std::size_t p = 0; p < tc.size(); ++p) {
    if (tc[p] < 0 || static_cast<std::size_t>(tc[p]) >= parameters_[p].values.size()) {
      return false;
    }
  }
  return true;
}

std::size_t ParameterSpace::cartesianSize() const noexcept {
  std::size_t product = 1;
  for (const Parameter& p : parameters_) {
    if (product > std::numeric_limits<std::size_t>::max() / p.values.size()) {
      return std::numeric_limits<std::size_t>::max();
    }
    product *= p.values.size();
  }
  return product;
}

PartialTuple::PartialTuple(std::vector<Assignment> assignments) {
  auto made = tryMake(std::move(assignments));
  if (!made) {
    throw ModelError("partial tuple assigns two values to one parameter");
  }
  *this = std::move(*made);
}

std::optional<PartialTuple> PartialTuple::tryMake(std::vector<Assignment> assignments) {
  std::sort(assignments.begin(), assignments.end());
  assignments.erase(std::unique(assignments.begin(), assignments.end()), assignments.end());
  for (std::size_t i = 1; i < assignments.size(); ++i) {
    if (assignments[i].parameter == assignments[i - 1].parameter) {
      return std::nullopt;
    }
  }
  PartialTuple tuple;
  tuple.items_ = std::move(assignments);
  return tuple;
}

std::optional<ValueIndex> PartialTuple::valueOf(ParamIndex p) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), p,
                             [](const Assignment& a, ParamIndex key) { return a.parameter < key; });
  if (it != items_.end() && it->parameter == p) {
    return it->value;
  }
  return std::nullopt;
}

bool PartialTuple::contains(const Assignment& a) const {
  return std::binary_search(items_.begin(), items_.end(), a);
}

bool PartialTuple::isSubsetOf(const PartialTuple& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

bool PartialTuple::matches(std::span<const ValueIndex> row) const {
  return std::all_of(items_.begin(), items_.end(), [&](const Assignment& a) {
    return a.parameter < row.size() && row[a.parameter] == a.value;
  });
}

PartialTuple PartialTuple::without(ParamIndex p) const {
  PartialTuple out;
  out.items_.reserve(items_.size());
  for (const Assignment& a : items_) {
    if (a.parameter != p) {
      out.items_.push_back(a);
    }
  }
  return out;
}

void Strength::validate(const ParameterSpace& space) const {
  if (t < 1) {
    throw ModelError("strength must be at least 1");
  }
  if (t > space.size()) {
    throw ModelError("strength exceeds parameter count (t=" + std::to_string(t) +
                     ", k=" + std::to_string(space.size()) + ")");
  }
}

std::size_t binomial(std::size_t n, std::size_t r) noexcept {
  if (r > n) {
    return 0;
  }
  r = std::min(r, n - r);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    const std::size_t numerator = n - r + i;
    if (result > std::numeric_limits<std::size_t>::max() / numerator) {
      return std::numeric_limits<std::size_t>::max();
    }
    // result * numerator is divisible by i at every step.
    result = result * numerator / i;
  }
  return result;
}

std::vector<std::vector<ParamIndex>> parameterCombinations(std::size_t n, std::size_t r) {
  std::vector<std::vector<ParamIndex>> out;
  if (r > n) {
    return out;
  }
  std::vector<ParamIndex> combo(r);
  for (std::size_t i = 0; i < r; ++i) {
    combo[i] = static_cast<ParamIndex>(i);
  }
  while (true) {
    out.push_back(combo);
    // Rightmost position that can still be incremented.
    std::size_t i = r;
    while (i > 0 && combo[i - 1] == n - r + (i - 1)) {
      --i;
    }
    if (i == 0) {
      break;
    }
    ++combo[i - 1];
    for (std::size_t j = i; j < r; ++j) {
      combo[j] = combo[j - 1] + 1;
    }
  }
  return out;
}

std::vector<PartialTuple> tTuplesOf(const TestCase& tc, Strength t, const ParameterSpace& space) {
  t.validate(space);
  if (!space.contains(tc)) {
    throw ModelError("test case does not belong to the parameter space");
  }
  std::vector<PartialTuple> out;
  for (const auto& combo : parameterCombinations(space.size(), t.t)) {
    std::vector<Assignment> assignments;
    assignments.reserve(combo.size());
    for (ParamIndex p : combo) {
      assignments.push_back({p, tc[p]});
    }
    out.emplace_back(std::move(assignments));
  }
  return out;
}

std::size_t hammingDistance(std::span<const ValueIndex> a, std::span<const ValueIndex> b) {
  if (a.size() != b.size()) {
    throw ModelError("hamming distance of test cases with different lengths");
  }
  return kernels::countMismatches(a, b);
}

std::string formatTuple(const PartialTuple& tuple, const ParameterSpace& space) {
  std::string out = "{";
  bool first = true;
  for (const Assignment& a : tuple) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += space.parameter(a.parameter).name;
    out += '=';
    out += space.valueName(a.parameter, a.value);
  }
  out += '}';
  return out;
}

}  // namespace citgen
