// AVX2 variants of the byte-scan kernels. Candidate positions are found by
// comparing the first and last needle bytes across 32-byte chunks; survivors
// are verified with memcmp. Compiled with -mavx2 for this TU only; callers
// reach these through the runtime dispatch in kernels.cpp.

#include "shiftlab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>

namespace shiftlab::kern::detail {

namespace {

inline bool verify(const std::uint8_t* hay, std::size_t i,
                   const std::uint8_t* needle, std::size_t needle_len) {
    return std::memcmp(hay + i, needle, needle_len) == 0;
}

} // namespace

std::size_t find_first_avx2(const std::uint8_t* hay, std::size_t hay_len,
                            std::size_t from,
                            const std::uint8_t* needle, std::size_t needle_len) {
    if (needle_len == 0 || needle_len > hay_len) return npos;
    const std::size_t last = hay_len - needle_len;
    if (from > last) return npos;

    const __m256i first = _mm256_set1_epi8((char)needle[0]);
    const __m256i tail = _mm256_set1_epi8((char)needle[needle_len - 1]);
    const std::size_t tail_off = needle_len - 1;

    std::size_t i = from;
    while (i + 32 <= last + 1) {
        const __m256i blk_first = _mm256_loadu_si256((const __m256i*)(hay + i));
        const __m256i blk_tail = _mm256_loadu_si256((const __m256i*)(hay + i + tail_off));
        const __m256i eq = _mm256_and_si256(_mm256_cmpeq_epi8(blk_first, first),
                                            _mm256_cmpeq_epi8(blk_tail, tail));
        std::uint32_t mask = (std::uint32_t)_mm256_movemask_epi8(eq);
        while (mask != 0) {
            const unsigned bit = (unsigned)__builtin_ctz(mask);
            const std::size_t cand = i + bit;
            if (verify(hay, cand, needle, needle_len)) return cand;
            mask &= mask - 1;
        }
        i += 32;
    }
    for (; i <= last; ++i) {
        if (hay[i] == needle[0] && verify(hay, i, needle, needle_len)) return i;
    }
    return npos;
}

std::size_t count_occurrences_avx2(const std::uint8_t* hay, std::size_t hay_len,
                                   const std::uint8_t* needle, std::size_t needle_len) {
    if (needle_len == 0 || needle_len > hay_len) return 0;
    const std::size_t last = hay_len - needle_len;
    const __m256i first = _mm256_set1_epi8((char)needle[0]);
    const __m256i tail = _mm256_set1_epi8((char)needle[needle_len - 1]);
    const std::size_t tail_off = needle_len - 1;

    std::size_t count = 0;
    std::size_t i = 0;
    while (i + 32 <= last + 1) {
        const __m256i blk_first = _mm256_loadu_si256((const __m256i*)(hay + i));
        const __m256i blk_tail = _mm256_loadu_si256((const __m256i*)(hay + i + tail_off));
        const __m256i eq = _mm256_and_si256(_mm256_cmpeq_epi8(blk_first, first),
                                            _mm256_cmpeq_epi8(blk_tail, tail));
        std::uint32_t mask = (std::uint32_t)_mm256_movemask_epi8(eq);
        if (needle_len <= 2) {
            count += (std::size_t)__builtin_popcount(mask);
        } else {
            while (mask != 0) {
                const unsigned bit = (unsigned)__builtin_ctz(mask);
                if (verify(hay, i + bit, needle, needle_len)) ++count;
                mask &= mask - 1;
            }
        }
        i += 32;
    }
    for (; i <= last; ++i) {
        if (hay[i] == needle[0] && verify(hay, i, needle, needle_len)) ++count;
    }
    return count;
}

} // namespace shiftlab::kern::detail

#endif // x86_64
