#include "citgen/report.hpp"

#include <algorithm>
#include <json.hpp>

namespace citgen {

namespace {

using Json = nlohmann::ordered_json;

Json reportObject(const oracle::OracleReport& report, const ModelFile& model) {
  Json missing = Json::array();
  for (const PartialTuple& tuple : report.missingTuples) {
    Json entry = Json::object();
    for (const Assignment& a : tuple) {
      entry[model.space.parameter(a.parameter).name] = model.space.valueName(a.parameter, a.value);
    }
    missing.push_back(std::move(entry));
  }
  Json invalid = Json::array();
  for (const oracle::InvalidRow& bad : report.invalidRows) {
    invalid.push_back({{"row", bad.row}, {"constraint", bad.clause + 1}});
  }
  Json out;
  out["passed"] = report.passed();
  out["coverageChecked"] = report.coverageChecked;
  out["coverableTuples"] = report.coverableTupleCount;
  out["coveredTuples"] = report.coveredTupleCount;
  out["missing"] = std::move(missing);
  out["invalidRows"] = std::move(invalid);
  return out;
}

std::string csvField(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) {
    return value;
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string suiteToJson(const ModelFile& model, const GenerationResult& result, std::size_t strength,
                        std::uint64_t seed, const oracle::OracleReport* verification) {
  const ParameterSpace& space = model.space;
  Json doc;
  Json names = Json::array();
  for (const Parameter& p : space.parameters()) {
    names.push_back(p.name);
  }
  doc["parameters"] = std::move(names);
  doc["strength"] = strength;
  doc["seed"] = seed;
  doc["size"] = result.suite.size();
  Json tests = Json::array();
  for (std::size_t r = 0; r < result.suite.size(); ++r) {
    Json row = Json::array();
    for (std::size_t p = 0; p < space.size(); ++p) {
      row.push_back(space.valueName(static_cast<ParamIndex>(p), result.suite.at(r, p)));
    }
    tests.push_back(std::move(row));
  }
  doc["tests"] = std::move(tests);
  doc["stats"] = {{"coverableTuples", result.stats.coverableTuples},
                  {"initialSize", result.stats.initialSize},
                  {"improveIterations", result.stats.improveIterations}};
  if (verification != nullptr) {
    doc["verification"] = reportObject(*verification, model);
  }
  return doc.dump(2) + "\n";
}

std::string suiteToCsv(const ParameterSpace& space, const SolutionMatrix& suite) {
  std::string out;
  for (std::size_t p = 0; p < space.size(); ++p) {
    out += (p > 0 ? "," : "") + csvField(space.parameter(static_cast<ParamIndex>(p)).name);
  }
  out += "\r\n";
  for (std::size_t r = 0; r < suite.size(); ++r) {
    for (std::size_t p = 0; p < space.size(); ++p) {
      const auto param = static_cast<ParamIndex>(p);
      out += (p > 0 ? "," : "") + csvField(space.valueName(param, suite.at(r, p)));
    }
    out += "\r\n";
  }
  return out;
}

std::string suiteToText(const ParameterSpace& space, const SolutionMatrix& suite, std::size_t strength,
                        std::uint64_t seed) {
  std::vector<std::size_t> widths(space.size());
  for (std::size_t p = 0; p < space.size(); ++p) {
    const Parameter& param = space.parameter(static_cast<ParamIndex>(p));
    widths[p] = param.name.size();
    for (const std::string& v : param.values) {
      widths[p] = std::max(widths[p], v.size());
    }
  }
  const std::size_t indexWidth = std::max<std::size_t>(1, std::to_string(suite.size()).size());
  auto cell = [](const std::string& s, std::size_t width) { return s + std::string(width - s.size(), ' '); };

  std::string out = "# tests: " + std::to_string(suite.size()) + "  strength: " + std::to_string(strength) +
                    "  seed: " + std::to_string(seed) + "\n";
  out += std::string(indexWidth, ' ');
  for (std::size_t p = 0; p < space.size(); ++p) {
    out += "  " + cell(space.parameter(static_cast<ParamIndex>(p)).name, widths[p]);
  }
  out += "\n";
  for (std::size_t r = 0; r < suite.size(); ++r) {
    const std::string index = std::to_string(r + 1);
    out += std::string(indexWidth - index.size(), ' ') + index;
    for (std::size_t p = 0; p < space.size(); ++p) {
      out += "  " + cell(space.valueName(static_cast<ParamIndex>(p), suite.at(r, p)), widths[p]);
    }
    out += "\n";
  }
  return out;
}

std::string reportToJson(const oracle::OracleReport& report, const ModelFile& model) {
  return reportObject(report, model).dump(2) + "\n";
}

}  // namespace citgen
