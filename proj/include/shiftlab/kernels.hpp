#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace shiftlab::kern {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/*
 * Byte-scanning primitives behind the factor index, density counters and
 * return-word scans. Scalar reference implementations are the contract;
 * the AVX2 variants are selected at runtime and must agree bit-for-bit
 * (equivalence-tested in tests/test_kernels.cpp).
 */

// First occurrence of needle in hay at position >= from, else npos.
std::size_t find_first(const std::uint8_t* hay, std::size_t hay_len,
                       std::size_t from,
                       const std::uint8_t* needle, std::size_t needle_len);

// Number of (possibly overlapping) occurrences of needle in hay.
std::size_t count_occurrences(const std::uint8_t* hay, std::size_t hay_len,
                              const std::uint8_t* needle, std::size_t needle_len);

// Appends every occurrence start position, in increasing order.
void collect_occurrences(const std::uint8_t* hay, std::size_t hay_len,
                         const std::uint8_t* needle, std::size_t needle_len,
                         std::vector<std::uint32_t>& out);

bool ranges_equal(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

enum class Dispatch { Auto, ForceScalar, ForceAvx2 };

// Process-wide selection. Auto picks AVX2 when the CPU supports it.
void set_dispatch(Dispatch d);
Dispatch dispatch();
bool avx2_available();
const char* active_kernel_name();

namespace detail {
std::size_t find_first_scalar(const std::uint8_t*, std::size_t, std::size_t,
                              const std::uint8_t*, std::size_t);
std::size_t count_occurrences_scalar(const std::uint8_t*, std::size_t,
                                     const std::uint8_t*, std::size_t);
std::size_t find_first_avx2(const std::uint8_t*, std::size_t, std::size_t,
                            const std::uint8_t*, std::size_t);
std::size_t count_occurrences_avx2(const std::uint8_t*, std::size_t,
                                   const std::uint8_t*, std::size_t);
} // namespace detail

} // namespace shiftlab::kern
