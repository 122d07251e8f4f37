#include "shiftlab/kernels.hpp"

#include <atomic>
#include <cstring>

namespace shiftlab::kern {

namespace detail {

std::size_t find_first_scalar(const std::uint8_t* hay, std::size_t hay_len,
                              std::size_t from,
                              const std::uint8_t* needle, std::size_t needle_len) {
    if (needle_len == 0 || needle_len > hay_len) return npos;
    const std::size_t last = hay_len - needle_len;
    if (from > last) return npos;
    const std::uint8_t first = needle[0];
    for (std::size_t i = from; i <= last; ++i) {
        if (hay[i] != first) continue;
        if (needle_len == 1 || std::memcmp(hay + i + 1, needle + 1, needle_len - 1) == 0)
            return i;
    }
    return npos;
}

std::size_t count_occurrences_scalar(const std::uint8_t* hay, std::size_t hay_len,
                                     const std::uint8_t* needle, std::size_t needle_len) {
    if (needle_len == 0 || needle_len > hay_len) return 0;
    std::size_t count = 0;
    const std::size_t last = hay_len - needle_len;
    const std::uint8_t first = needle[0];
    for (std::size_t i = 0; i <= last; ++i) {
        if (hay[i] != first) continue;
        if (needle_len == 1 || std::memcmp(hay + i + 1, needle + 1, needle_len - 1) == 0)
            ++count;
    }
    return count;
}

} // namespace detail

namespace {

std::atomic<Dispatch> g_dispatch{Dispatch::Auto};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool use_avx2() {
    switch (g_dispatch.load(std::memory_order_relaxed)) {
        case Dispatch::ForceScalar: return false;
        case Dispatch::ForceAvx2: return true;
        case Dispatch::Auto: break;
    }
    static const bool has = cpu_has_avx2();
    return has;
}

} // namespace

void set_dispatch(Dispatch d) { g_dispatch.store(d, std::memory_order_relaxed); }
Dispatch dispatch() { return g_dispatch.load(std::memory_order_relaxed); }
bool avx2_available() { return cpu_has_avx2(); }
const char* active_kernel_name() { return use_avx2() ? "avx2" : "scalar"; }

std::size_t find_first(const std::uint8_t* hay, std::size_t hay_len, std::size_t from,
                       const std::uint8_t* needle, std::size_t needle_len) {
#if defined(__x86_64__) || defined(_M_X64)
    if (use_avx2())
        return detail::find_first_avx2(hay, hay_len, from, needle, needle_len);
#endif
    return detail::find_first_scalar(hay, hay_len, from, needle, needle_len);
}

std::size_t count_occurrences(const std::uint8_t* hay, std::size_t hay_len,
                              const std::uint8_t* needle, std::size_t needle_len) {
#if defined(__x86_64__) || defined(_M_X64)
    if (use_avx2())
        return detail::count_occurrences_avx2(hay, hay_len, needle, needle_len);
#endif
    return detail::count_occurrences_scalar(hay, hay_len, needle, needle_len);
}

void collect_occurrences(const std::uint8_t* hay, std::size_t hay_len,
                         const std::uint8_t* needle, std::size_t needle_len,
                         std::vector<std::uint32_t>& out) {
    std::size_t pos = 0;
    while ((pos = find_first(hay, hay_len, pos, needle, needle_len)) != npos) {
        out.push_back(static_cast<std::uint32_t>(pos));
        ++pos;
    }
}

bool ranges_equal(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    return std::memcmp(a, b, n) == 0;
}

} // namespace shiftlab::kern
