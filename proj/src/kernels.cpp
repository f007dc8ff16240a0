#include "citgen/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <vector>

namespace citgen::kernels {

namespace {

bool cpuHasAvx2() noexcept {
#if defined(CITGEN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend detectBackend() noexcept { return cpuHasAvx2() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend>& backendSlot() noexcept {
  static std::atomic<Backend> slot{detectBackend()};
  return slot;
}

std::size_t mismatches(const std::int32_t* a, const std::int32_t* b, std::size_t n) noexcept {
#ifdef CITGEN_HAVE_AVX2
  if (backendSlot().load(std::memory_order_relaxed) == Backend::Avx2) {
    return avx2::countMismatches(a, b, n);
  }
#endif
  return scalar::countMismatches(a, b, n);
}

}  // namespace

std::size_t countMismatches(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  assert(a.size() == b.size());
  return mismatches(a.data(), b.data(), std::min(a.size(), b.size()));
}

std::uint64_t summedHamming(std::span<const std::int32_t> rows, std::span<const std::int32_t> row) {
  const std::size_t k = row.size();
  if (k == 0 || rows.empty()) {
    return 0;
  }
  assert(rows.size() % k == 0);
  // Compare the flat matrix against `row` tiled to a whole number of rows, so
  // that the kernel sees long contiguous runs even when k is tiny.
  constexpr std::size_t kRowsPerChunk = 64;
  const std::size_t chunkRows = std::min(kRowsPerChunk, rows.size() / k);
  std::vector<std::int32_t> tiled(chunkRows * k);
  for (std::size_t r = 0; r < chunkRows; ++r) {
    std::copy(row.begin(), row.end(), tiled.begin() + static_cast<std::ptrdiff_t>(r * k));
  }
  std::uint64_t total = 0;
  for (std::size_t offset = 0; offset < rows.size(); offset += tiled.size()) {
    const std::size_t n = std::min(tiled.size(), rows.size() - offset);
    total += mismatches(rows.data() + offset, tiled.data(), n);
  }
  return total;
}

CellTally tallyCells(std::span<const std::int32_t> cells) {
#ifdef CITGEN_HAVE_AVX2
  if (backendSlot().load(std::memory_order_relaxed) == Backend::Avx2) {
    return avx2::tallyCells(cells.data(), cells.size());
  }
#endif
  return scalar::tallyCells(cells.data(), cells.size());
}

Backend activeBackend() noexcept { return backendSlot().load(std::memory_order_relaxed); }

bool backendAvailable(Backend b) noexcept { return b == Backend::Scalar || cpuHasAvx2(); }

bool setBackend(Backend b) noexcept {
  if (!backendAvailable(b)) {
    return false;
  }
  backendSlot().store(b, std::memory_order_relaxed);
  return true;
}

std::string_view backendName(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace citgen::kernels
