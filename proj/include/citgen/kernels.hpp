#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64 builds, an AVX2 version; the dispatcher picks one at runtime from
// CPUID and the results are required to be identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace citgen::kernels {

enum class Backend { Scalar, Avx2 };

struct CellTally {
  std::size_t coverable = 0;  // cells >= 0
  std::size_t uncovered = 0;  // cells == 0
  std::size_t multi = 0;      // cells >= 2

  bool operator==(const CellTally&) const = default;
};

/// Number of positions i < a.size() where a[i] != b[i]. Requires equal sizes.
std::size_t countMismatches(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

/// Sum over rows of the Hamming distance between `row` and each k-wide row of
/// the row-major matrix `rows`. Requires rows.size() % row.size() == 0.
std::uint64_t summedHamming(std::span<const std::int32_t> rows, std::span<const std::int32_t> row);

CellTally tallyCells(std::span<const std::int32_t> cells);

Backend activeBackend() noexcept;
bool backendAvailable(Backend b) noexcept;
/// Forces a backend (tests and benchmarks). Returns false if unavailable.
bool setBackend(Backend b) noexcept;
std::string_view backendName(Backend b) noexcept;

namespace scalar {
std::size_t countMismatches(const std::int32_t* a, const std::int32_t* b, std::size_t n) noexcept;
CellTally tallyCells(const std::int32_t* cells, std::size_t n) noexcept;
}  // namespace scalar

#ifdef CITGEN_HAVE_AVX2
namespace avx2 {
std::size_t countMismatches(const std::int32_t* a, const std::int32_t* b, std::size_t n) noexcept;
CellTally tallyCells(const std::int32_t* cells, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace citgen::kernels
