#include "citgen/parser.hpp"

#include <fstream>
#include <sstream>

namespace citgen {

namespace {

constexpr std::string_view kWhitespace = " \t\r\f\v";
constexpr std::string_view kReserved = "[],|!=";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

std::string checkedName(std::string_view raw, std::size_t line, std::string_view what) {
  const std::string_view name = trim(raw);
  if (name.empty()) {
    throw ParseError(line, "empty " + std::string(what));
  }
  if (name.find_first_of(kReserved) != std::string_view::npos) {
    throw ParseError(line, std::string(what) + " '" + std::string(name) + "' contains a reserved character");
  }
  return std::string(name);
}

bool looksLikeSectionHeader(std::string_view line) {
  if (line.empty()) {
    return false;
  }
  for (char c : line) {
    if (!((c >= 'A' && c <= 'Z') || c == '_')) {
      return false;
    }
  }
  return true;
}

Parameter parseParameter(std::string_view line, std::size_t lineNo) {
  const auto open = line.find('[');
  if (open == std::string_view::npos) {
    throw ParseError(lineNo, "expected 'name[value, ...]'");
  }
  if (line.back() != ']') {
    throw ParseError(lineNo, "parameter line must end with ']'");
  }
  Parameter param;
  param.name = checkedName(line.substr(0, open), lineNo, "parameter name");
  const std::string_view body = line.substr(open + 1, line.size() - open - 2);
  if (body.find_first_of("[]") != std::string_view::npos) {
    throw ParseError(lineNo, "unbalanced brackets in parameter '" + param.name + "'");
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    const auto piece = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::string value = checkedName(piece, lineNo, "value");
    for (const auto& existing : param.values) {
      if (existing == value) {
        throw ParseError(lineNo, "duplicate value '" + value + "' in parameter '" + param.name + "'");
      }
    }
    param.values.push_back(std::move(value));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return param;
}

Literal parseLiteral(std::string_view text, std::size_t lineNo) {
  const auto op = text.find("!=");
  if (op == std::string_view::npos) {
    throw ParseError(lineNo, "expected 'parameter != value' in '" + std::string(trim(text)) + "'");
  }
  return {checkedName(text.substr(0, op), lineNo, "parameter name"),
          checkedName(text.substr(op + 2), lineNo, "value")};
}

Clause parseClause(std::string_view line, std::size_t lineNo) {
  Clause clause;
  clause.line = lineNo;
  std::size_t start = 0;
  while (true) {
    const auto bar = line.find("||", start);
    const auto piece = line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    clause.literals.push_back(parseLiteral(piece, lineNo));
    if (bar == std::string_view::npos) {
      break;
    }
    start = bar + 2;
  }
  return clause;
}

void resolveClause(const Clause& clause, const ParameterSpace& space) {
  for (const Literal& lit : clause.literals) {
    const auto p = space.findParameter(lit.parameter);
    if (!p) {
      throw ParseError(clause.line, "unknown parameter " + lit.parameter);
    }
    if (!space.findValue(*p, lit.value)) {
      throw ParseError(clause.line, "unknown value " + lit.value + " for parameter " + lit.parameter);
    }
  }
}

}  // namespace

ModelFile parseModel(std::string_view text) {
  enum class Section { Start, Parameters, Constraints };
  Section section = Section::Start;
  std::vector<Parameter> parameters;
  std::vector<std::size_t> parameterLines;
  std::vector<Clause> clauses;

  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineNo;

    const std::string_view line = trim(raw);
    if (line.empty()) {
      continue;
    }
    switch (section) {
      case Section::Start:
        if (line != "PARAMETERS") {
          throw ParseError(lineNo, "missing PARAMETERS header");
        }
        section = Section::Parameters;
        break;
      case Section::Parameters:
        if (line == "CONSTRAINTS") {
          if (parameters.empty()) {
            throw ParseError(lineNo, "CONSTRAINTS before any parameter");
          }
          section = Section::Constraints;
        } else if (looksLikeSectionHeader(line)) {
          throw ParseError(lineNo, "unknown section " + std::string(line));
        } else {
          Parameter param = parseParameter(line, lineNo);
          for (const Parameter& existing : parameters) {
            if (existing.name == param.name) {
              throw ParseError(lineNo, "duplicate parameter '" + param.name + "'");
            }
          }
          parameters.push_back(std::move(param));
          parameterLines.push_back(lineNo);
        }
        break;
      case Section::Constraints:
        if (looksLikeSectionHeader(line)) {
          throw ParseError(lineNo, "unexpected section " + std::string(line));
        }
        clauses.push_back(parseClause(line, lineNo));
        break;
    }
  }
  if (section == Section::Start) {
    throw ParseError(lineNo == 0 ? 1 : lineNo, "missing PARAMETERS header");
  }
  if (parameters.empty()) {
    throw ParseError(lineNo, "no parameters declared");
  }

  ModelFile model{ParameterSpace(std::move(parameters)), std::move(clauses)};
  for (const Clause& clause : model.clauses) {
    resolveClause(clause, model.space);
  }
  return model;
}

ModelFile loadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw std::ios_base::failure("cannot read " + path);
  }
  return parseModel(buffer.str());
}

std::string emitModel(const ModelFile& model) {
  std::string out = "PARAMETERS\n";
  for (const Parameter& p : model.space.parameters()) {
    out += p.name;
    out += '[';
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      out += p.values[i];
    }
    out += "]\n";
  }
  if (!model.clauses.empty()) {
    out += "\nCONSTRAINTS\n";
    for (const Clause& clause : model.clauses) {
      for (std::size_t i = 0; i < clause.literals.size(); ++i) {
        if (i > 0) {
          out += " || ";
        }
        out += clause.literals[i].parameter + " != " + clause.literals[i].value;
      }
      out += '\n';
    }
  }
  return out;
}

std::optional<PartialTuple> clauseToTuple(const Clause& clause, const ParameterSpace& space) {
  std::vector<Assignment> assignments;
  assignments.reserve(clause.literals.size());
  for (const Literal& lit : clause.literals) {
    const auto p = space.findParameter(lit.parameter);
    const auto v = p ? space.findValue(*p, lit.value) : std::nullopt;
    if (!v) {
      throw ModelError("clause references " + lit.parameter + "=" + lit.value + " outside the space");
    }
    assignments.push_back({*p, *v});
  }
  return PartialTuple::tryMake(std::move(assignments));
}

std::vector<PartialTuple> clausesToTuples(const std::vector<Clause>& clauses, const ParameterSpace& space) {
  std::vector<PartialTuple> out;
  for (const Clause& clause : clauses) {
    if (auto tuple = clauseToTuple(clause, space)) {
      out.push_back(std::move(*tuple));
    }
  }
  return out;
}

}  // namespace citgen
