#pragma once

#include <cstdint>
#include <string>

#include "citgen/generator.hpp"
#include "citgen/oracle.hpp"
#include "citgen/parser.hpp"

namespace citgen {

/// Stable JSON document:
///   {"parameters": [...], "strength": t, "seed": n, "size": N,
///    "tests": [[value names]], "stats": {"coverableTuples", "initialSize",
///    "improveIterations"}}
/// plus "verification" when a report is given.
std::string suiteToJson(const ModelFile& model, const GenerationResult& result, std::size_t strength,
                        std::uint64_t seed, const oracle::OracleReport* verification = nullptr);

/// Header of parameter names, then one line per test; RFC 4180 quoting.
std::string suiteToCsv(const ParameterSpace& space, const SolutionMatrix& suite);

/// Column-aligned table for people.
std::string suiteToText(const ParameterSpace& space, const SolutionMatrix& suite, std::size_t strength,
                        std::uint64_t seed);

std::string reportToJson(const oracle::OracleReport& report, const ModelFile& model);

}  // namespace citgen
