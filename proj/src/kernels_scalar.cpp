#include "citgen/kernels.hpp"

namespace citgen::kernels::scalar {

std::size_t countMismatches(const std::int32_t* a, const std::int32_t* b, std::size_t n) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += a[i] != b[i] ? 1 : 0;
  }
  return count;
}

CellTally tallyCells(const std::int32_t* cells, std::size_t n) noexcept {
  CellTally tally;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t c = cells[i];
    tally.coverable += c >= 0 ? 1 : 0;
    tally.uncovered += c == 0 ? 1 : 0;
    tally.multi += c >= 2 ? 1 : 0;
  }
  return tally;
}

}  // namespace citgen::kernels::scalar
