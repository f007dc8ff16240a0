#include <immintrin.h>

#include "citgen/kernels.hpp"

namespace citgen::kernels::avx2 {

namespace {

// Lanes of an all-ones compare mask count as -1; subtracting accumulates +1.
inline std::uint64_t horizontalSum(__m256i acc) {
  alignas(32) std::int32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t sum = 0;
  for (std::int32_t lane : lanes) {
    sum += static_cast<std::uint32_t>(lane);
  }
  return sum;
}

// Per-lane int32 counters overflow after 2^31 blocks; flush well before that.
constexpr std::size_t kFlushBlocks = std::size_t{1} << 24;

}  // namespace

std::size_t countMismatches(const std::int32_t* a, const std::int32_t* b, std::size_t n) noexcept {
  std::size_t total = 0;
  std::size_t i = 0;
  while (n - i >= 8) {
    __m256i equal = _mm256_setzero_si256();
    std::size_t blocks = 0;
    for (; n - i >= 8 && blocks < kFlushBlocks; i += 8, ++blocks) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      equal = _mm256_sub_epi32(equal, _mm256_cmpeq_epi32(va, vb));
    }
    total += blocks * 8 - horizontalSum(equal);
  }
  for (; i < n; ++i) {
    total += a[i] != b[i] ? 1 : 0;
  }
  return total;
}

CellTally tallyCells(const std::int32_t* cells, std::size_t n) noexcept {
  CellTally tally;
  const __m256i minusOne = _mm256_set1_epi32(-1);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t i = 0;
  while (n - i >= 8) {
    __m256i coverable = _mm256_setzero_si256();
    __m256i uncovered = _mm256_setzero_si256();
    __m256i multi = _mm256_setzero_si256();
    std::size_t blocks = 0;
    for (; n - i >= 8 && blocks < kFlushBlocks; i += 8, ++blocks) {
      const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cells + i));
      coverable = _mm256_sub_epi32(coverable, _mm256_cmpgt_epi32(v, minusOne));
      uncovered = _mm256_sub_epi32(uncovered, _mm256_cmpeq_epi32(v, zero));
      multi = _mm256_sub_epi32(multi, _mm256_cmpgt_epi32(v, one));
    }
    tally.coverable += horizontalSum(coverable);
    tally.uncovered += horizontalSum(uncovered);
    tally.multi += horizontalSum(multi);
  }
  for (; i < n; ++i) {
    const std::int32_t c = cells[i];
    tally.coverable += c >= 0 ? 1 : 0;
    tally.uncovered += c == 0 ? 1 : 0;
    tally.multi += c >= 2 ? 1 : 0;
  }
  return tally;
}

}  // namespace citgen::kernels::avx2
