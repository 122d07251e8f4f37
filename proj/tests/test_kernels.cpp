#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "shiftlab/kernels.hpp"

using namespace shiftlab;

namespace {

std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t len, int alpha) {
    std::uniform_int_distribution<int> d(0, alpha - 1);
    std::vector<std::uint8_t> v(len);
    for (auto& b : v) b = (std::uint8_t)d(rng);
    return v;
}

} // namespace

TEST_CASE("scalar kernels: boundaries and trivial cases") {
    const std::vector<std::uint8_t> hay = {0, 1, 0, 0, 1, 0, 1, 0};
    const std::vector<std::uint8_t> ab = {0, 1};
    CHECK(kern::detail::find_first_scalar(hay.data(), hay.size(), 0, ab.data(), 2) == 0);
    CHECK(kern::detail::find_first_scalar(hay.data(), hay.size(), 1, ab.data(), 2) == 3);
    CHECK(kern::detail::find_first_scalar(hay.data(), hay.size(), 7, ab.data(), 2) ==
          kern::npos);
    const std::vector<std::uint8_t> aa = {0, 0};
    CHECK(kern::detail::count_occurrences_scalar(hay.data(), hay.size(), aa.data(), 2) == 1);

    // needle longer than hay
    const std::vector<std::uint8_t> lng(16, 0);
    CHECK(kern::detail::find_first_scalar(hay.data(), hay.size(), 0, lng.data(), 16) ==
          kern::npos);
    CHECK(kern::detail::count_occurrences_scalar(hay.data(), hay.size(), lng.data(), 16) ==
          0);

    // overlapping counts: "aa" in "aaaa" -> 3
    const std::vector<std::uint8_t> quad(4, 0);
    CHECK(kern::detail::count_occurrences_scalar(quad.data(), 4, aa.data(), 2) == 3);
}

TEST_CASE("avx2 kernels agree with scalar reference") {
    if (!kern::avx2_available()) {
        MESSAGE("AVX2 not available; equivalence suite skipped");
        return;
    }
    std::mt19937 rng(20240817);
    for (int round = 0; round < 200; ++round) {
        const int alpha = 1 + (round % 4);  // skewed alphabets stress candidate masks
        const std::size_t hay_len = 1 + (std::size_t)(rng() % 700);
        auto hay = random_bytes(rng, hay_len, alpha + 1);
        const std::size_t nl = 1 + (std::size_t)(rng() % 24);
        std::vector<std::uint8_t> needle;
        if (rng() % 2 == 0 && hay_len >= nl) {
            const std::size_t at = rng() % (hay_len - nl + 1);
            needle.assign(hay.begin() + (long)at, hay.begin() + (long)(at + nl));
        } else {
            needle = random_bytes(rng, nl, alpha + 1);
        }
        const std::size_t from = rng() % (hay_len + 2);

        CAPTURE(round);
        CHECK(kern::detail::find_first_avx2(hay.data(), hay.size(), from, needle.data(),
                                            needle.size()) ==
              kern::detail::find_first_scalar(hay.data(), hay.size(), from, needle.data(),
                                              needle.size()));
        CHECK(kern::detail::count_occurrences_avx2(hay.data(), hay.size(), needle.data(),
                                                   needle.size()) ==
              kern::detail::count_occurrences_scalar(hay.data(), hay.size(), needle.data(),
                                                     needle.size()));
    }
}

TEST_CASE("dispatch override") {
    kern::set_dispatch(kern::Dispatch::ForceScalar);
    CHECK(std::string(kern::active_kernel_name()) == "scalar");
    kern::set_dispatch(kern::Dispatch::Auto);
    if (kern::avx2_available()) CHECK(std::string(kern::active_kernel_name()) == "avx2");

    const std::vector<std::uint8_t> hay = {1, 2, 3, 1, 2, 3, 1, 2};
    const std::vector<std::uint8_t> ndl = {1, 2};
    std::vector<std::uint32_t> occ;
    kern::collect_occurrences(hay.data(), hay.size(), ndl.data(), 2, occ);
    CHECK(occ == std::vector<std::uint32_t>{0, 3, 6});
}
