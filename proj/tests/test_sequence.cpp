#include <doctest.h>

#include <cstdio>
#include <map>

#include "oracles.hpp"
#include "shiftlab/sequence.hpp"

using namespace shiftlab;

namespace {

const std::map<char, std::string> kFib = {{'a', "ab"}, {'b', "a"}};
const std::map<char, std::string> kTm = {{'a', "ab"}, {'b', "ba"}};
const std::map<char, std::string> kTrib = {{'a', "ab"}, {'b', "ac"}, {'c', "a"}};

} // namespace

TEST_CASE("substitution fixed point: frozen prefixes") {
    CHECK(generate_substitution(kFib, 'a', 13).text() == "abaababaabaab");
    CHECK(generate_substitution(kTm, 'a', 8).text() == "abbabaab");
    // first iterate meeting min_length is returned whole
    CHECK(generate_substitution(kTm, 'a', 7).text() == "abbabaab");
}

TEST_CASE("substitution errors") {
    CHECK_THROWS_WITH_AS(generate_substitution({{'a', "a"}}, 'a', 5).length(),
                         doctest::Contains("NonGrowing"), Error);
    CHECK_THROWS_WITH_AS(generate_substitution({{'a', "ba"}, {'b', "a"}}, 'a', 5).length(),
                         doctest::Contains("NonProlongable"), Error);
    CHECK_THROWS_WITH_AS(generate_substitution({{'a', "ab"}}, 'a', 5).length(),
                         doctest::Contains("RuleDomainIncomplete"), Error);
}

TEST_CASE("substitution prefixes nest and match the oracle") {
    const std::string big = oracle::iterate_substitution(kTrib, 'a', 500);
    for (std::size_t want : {5, 24, 81, 300}) {
        const auto seq = generate_substitution(kTrib, 'a', want);
        CHECK(seq.length() >= want);
        CHECK(big.substr(0, seq.length()) == seq.text());
    }
}

TEST_CASE("determinism: same provenance, same bytes") {
    const auto s1 = generate_substitution(kFib, 'a', 1000);
    const auto s2 = generate_substitution(kFib, 'a', 1000);
    CHECK(s1.provenance() == s2.provenance());
    CHECK(s1.text() == s2.text());
}

TEST_CASE("sturmian golden rotation equals Fibonacci substitution up to renaming") {
    // alpha = [0;1,1,1,...]: coding emits 1 exactly where the Fibonacci word
    // has 'a', so compare after the swap.
    const auto rot = generate_sturmian({1}, Rat(0), 13);
    std::string renamed;
    for (std::size_t i = 0; i < rot.length(); ++i)
        renamed.push_back(rot.at(i) == 1 ? 'a' : 'b');
    CHECK(renamed == "abaababaabaab");

    const auto fib = generate_substitution(kFib, 'a', 4000);
    const auto rot2 = generate_sturmian({1, 1, 1, 1}, Rat(0), 4000);
    for (std::size_t i = 0; i < 4000; ++i) {
        if ((rot2.at(i) == 1 ? 'a' : 'b') != fib.text(i, 1)[0]) {
            CAPTURE(i);
            CHECK(false);
            break;
        }
    }
}

TEST_CASE("sturmian rejects rational and under-resolved slopes") {
    // literal cf [0;2] = 1/2: periodic within any window of length >= 2
    CHECK_THROWS_WITH_AS(generate_sturmian({2}, Rat(0), 13, false).length(),
                         doctest::Contains("RationalSlope"), Error);
    // q = 89 > 60 but 89*1 < 60^2
    CHECK_THROWS_WITH_AS(generate_sturmian({89}, Rat(0), 60, false).length(),
                         doctest::Contains("InsufficientPrecision"), Error);
    // a long literal golden prefix resolves fine
    std::vector<std::uint64_t> ones(40, 1);
    CHECK(generate_sturmian(ones, Rat(0), 100, false).length() == 100);
}

TEST_CASE("iet: 2-interval exchange reproduces the rotation coding") {
    // Rotation by alpha = p/q acting as a 2-IET with lengths (1-alpha, alpha)
    // and swap permutation. Sturmian coding starts at {alpha + intercept}.
    const std::uint64_t p = 13, q = 34;  // golden convergent 13/34 ~ 0.382... no: use 21/34
    (void)p;
    const Rat alpha(21, 34);
    const auto rot = generate_sturmian({1, 1, 1, 1, 1, 1, 1}, Rat(0), 30);
    const auto iet = generate_iet_coding({Rat(1) - alpha, alpha}, {2, 1}, alpha, 30);
    // IET labels interval 2 (symbol 'b') exactly when the rotation coding is 1.
    for (std::size_t i = 0; i < 30; ++i) CHECK(iet.at(i) == rot.at(i));
}

TEST_CASE("iet errors") {
    CHECK_THROWS_WITH_AS(
        generate_iet_coding({Rat(1, 2), Rat(1, 2)}, {1, 2}, Rat(0), 20).length(),
        doctest::Contains("ReduciblePermutation"), Error);
    // rational 3-IET with a tiny denominator is periodic
    CHECK_THROWS_WITH_AS(
        generate_iet_coding({Rat(1, 4), Rat(1, 4), Rat(1, 2)}, {3, 2, 1}, Rat(0), 64)
            .length(),
        doctest::Contains("NonMinimalDetected"), Error);
}

TEST_CASE("file round trip") {
    const auto seq = generate_substitution(kTm, 'a', 200);
    const std::string path = "roundtrip_tmp.seq";
    save_sequence(seq, path);
    const auto back = load_sequence(path);
    REQUIRE(back.length() == seq.length());
    CHECK(back.alphabet() == seq.alphabet());
    CHECK(back.text() == seq.text());
    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());

    CHECK_THROWS_WITH_AS(load_sequence("does_not_exist.seq").length(),
                         doctest::Contains("IoError"), Error);
}

TEST_CASE("load: alphabet hint mismatch") {
    const std::string path = "hint_tmp.seq";
    {
        FILE* f = std::fopen(path.c_str(), "wb");
        std::fputs("abc", f);
        std::fclose(f);
    }
    CHECK_THROWS_WITH_AS(load_sequence(path, {{'a', 'b'}}).length(),
                         doctest::Contains("AlphabetMismatch"), Error);
    const auto ok = load_sequence(path, {{'a', 'b', 'c', 'd'}});
    CHECK(ok.alphabet_size() == 4);
    std::remove(path.c_str());
}

TEST_CASE("smallest_period") {
    const std::uint8_t w1[] = {0, 1, 0, 1, 0, 1};
    CHECK(smallest_period(w1, 6) == 2);
    const std::uint8_t w2[] = {0, 1, 1, 0, 1};
    CHECK(smallest_period(w2, 5) == 3);
}
