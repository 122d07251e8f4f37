#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "shiftlab/moves.hpp"

using namespace shiftlab;

namespace {

const std::map<char, std::string> kFib = {{'a', "ab"}, {'b', "a"}};
const std::map<char, std::string> kTm = {{'a', "ab"}, {'b', "ba"}};
const std::map<char, std::string> kTrib = {{'a', "ab"}, {'b', "ac"}, {'c', "a"}};

LanguageIndex make_index(const std::map<char, std::string>& rules, std::size_t len,
                         std::size_t max_n) {
    auto seq = std::make_shared<SymbolSequence>(generate_substitution(rules, 'a', len));
    return LanguageIndex::build(seq, max_n);
}

LanguageIndex golden_iet_index(std::size_t len, std::size_t max_n) {
    auto seq = std::make_shared<SymbolSequence>(generate_iet_coding(
        {Rat(22312324, 165580141), Rat(2, 5), Rat(385178803, 827900705)}, {3, 2, 1},
        Rat(1, 7), len));
    return LanguageIndex::build(seq, max_n);
}

std::vector<std::size_t> bispecial_values(const LanguageIndex& idx) {
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n + 2 <= idx.safe_horizon(); ++n)
        if (!idx.bispecial_words(n).empty()) out.push_back(n);
    return out;
}

} // namespace

TEST_CASE("next_bispecial") {
    const auto idx = make_index(kFib, 60000, 60);
    CHECK(next_bispecial(idx, 1) == 1);

    // exhaustive scan oracle; Fibonacci bispecial lengths are F_k - 2
    const auto values = bispecial_values(idx);
    REQUIRE(values.size() >= 4);
    std::set<std::size_t> fib_minus_2;
    for (std::size_t a = 1, b = 2; b <= idx.safe_horizon() + 2;) {
        if (b >= 3) fib_minus_2.insert(b - 2);
        const std::size_t c = a + b;
        a = b;
        b = c;
    }
    for (std::size_t v : values) {
        CHECK(fib_minus_2.count(v) == 1);
        CHECK(next_bispecial(idx, v) == v);
    }
    // spacing bound for constant growth: B - n < (K+1) n with K = 1
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        CHECK(values[i + 1] - (values[i] + 1) < 2 * (values[i] + 1));
    // scan completeness: every n maps to the smallest bispecial value >= n
    for (std::size_t n = 1; n <= values.back(); ++n) {
        std::size_t expect = 0;
        for (std::size_t m = n; m <= values.back(); ++m)
            if (!idx.bispecial_words(m).empty()) {
                expect = m;
                break;
            }
        CHECK(next_bispecial(idx, n) == expect);
    }
    std::size_t last = values.back();
    for (std::size_t m = last + 1; m < idx.safe_horizon(); ++m)
        if (!idx.bispecial_words(m).empty()) last = m;
    CHECK_THROWS_WITH_AS(next_bispecial(idx, last + 1),
                         doctest::Contains("BeyondHorizon"), Error);
}

TEST_CASE("sturmian moves are regular and preserve the two-vertex shape") {
    const auto idx = make_index(kFib, 60000, 60);
    for (std::size_t n : bispecial_values(idx)) {
        const auto trace = evolve(idx, n);
        CAPTURE(n);
        REQUIRE(trace.records.size() == 1);
        CHECK(trace.records[0].info.cls == BispecialClass::Regular);
        CHECK(trace.predicted);
        CHECK(trace.match);
        REQUIRE(trace.intermediates.size() == 1);
        CHECK(trace.intermediates[0].vertices.size() == 2);
    }
}

TEST_CASE("apply_move argument validation") {
    const auto idx = make_index(kFib, 10000, 30);
    const auto g = abstract_from(idx, special_rauzy_graph(idx, 1));
    std::size_t pair_edge = g.edges.size(), other_edge = g.edges.size();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].pair_edge)
            pair_edge = e;
        else
            other_edge = e;
    }
    REQUIRE(pair_edge < g.edges.size());
    REQUIRE(other_edge < g.edges.size());

    const std::vector<std::pair<char, char>> pairs = {{'a', 'b'}, {'b', 'a'}, {'b', 'b'}};
    CHECK_THROWS_WITH_AS(apply_move(g, other_edge, BispecialClass::Regular, pairs),
                         doctest::Contains("NotBispecialEdge"), Error);
    CHECK_THROWS_WITH_AS(apply_move(g, pair_edge, BispecialClass::Nonbinary, pairs),
                         doctest::Contains("ClassUnsupported"), Error);
    CHECK_THROWS_WITH_AS(apply_move(g, pair_edge, BispecialClass::Weak, pairs),
                         doctest::Contains("BadArgument"), Error);
}

TEST_CASE("thue-morse: all moves match and weak/strong both occur") {
    const auto idx = make_index(kTm, 60000, 48);
    std::set<BispecialClass> seen;
    for (std::size_t n : bispecial_values(idx)) {
        const auto trace = evolve(idx, n);
        CAPTURE(n);
        CHECK(trace.predicted);
        CHECK(trace.match);
        CHECK(trace.witness.empty());
        for (const auto& r : trace.records) seen.insert(r.info.cls);

        // K_s accounting: weak lowers both counts by 1, regular keeps, strong
        // raises by 1; totals must match the special-word counts at n+1.
        std::int64_t delta = 0;
        for (const auto& r : trace.records) {
            if (r.info.cls == BispecialClass::Weak) delta -= 1;
            if (r.info.cls == BispecialClass::Strong) delta += 1;
        }
        const std::int64_t kl_n = (std::int64_t)idx.special_words(n, Side::Left).size();
        const std::int64_t kl_n1 =
            (std::int64_t)idx.special_words(n + 1, Side::Left).size();
        const std::int64_t kr_n = (std::int64_t)idx.special_words(n, Side::Right).size();
        const std::int64_t kr_n1 =
            (std::int64_t)idx.special_words(n + 1, Side::Right).size();
        CHECK(kl_n1 - kl_n == delta);
        CHECK(kr_n1 - kr_n == delta);
    }
    CHECK(seen.count(BispecialClass::Weak) == 1);
    CHECK(seen.count(BispecialClass::Strong) == 1);
}

TEST_CASE("golden 3-iet: binary moves match") {
    const auto idx = golden_iet_index(60000, 48);
    REQUIRE(idx.safe_horizon() >= 20);
    std::size_t events = 0;
    for (std::size_t n : bispecial_values(idx)) {
        if (n < 3) continue;  // binary condition settles after the first levels
        const auto trace = evolve(idx, n);
        CAPTURE(n);
        CHECK(trace.predicted);
        CHECK(trace.match);
        ++events;
    }
    CHECK(events >= 3);
}

TEST_CASE("tribonacci: nonbinary fallback") {
    const auto idx = make_index(kTrib, 60000, 40);
    for (std::size_t n : bispecial_values(idx)) {
        const auto trace = evolve(idx, n);
        CHECK_FALSE(trace.predicted);
        CHECK(trace.match);
        for (const auto& r : trace.records)
            CHECK(r.info.cls == BispecialClass::Nonbinary);
    }
}

TEST_CASE("order independence of serialized moves") {
    // multi-site values need a corpus with several bispecial words per length
    const auto idx = make_index(kTm, 60000, 48);
    std::size_t multi = 0;
    for (std::size_t n : bispecial_values(idx)) {
        const auto fwd = evolve(idx, n, false);
        const auto rev = evolve(idx, n, true);
        CHECK(fwd.match);
        CHECK(rev.match);
        if (fwd.records.size() >= 2) {
            ++multi;
            REQUIRE(!fwd.intermediates.empty());
            REQUIRE(!rev.intermediates.empty());
            CHECK(comparison_form(fwd.intermediates.back()) ==
                  comparison_form(rev.intermediates.back()));
        }
    }
    CHECK(multi >= 1);
}

TEST_CASE("weight rules between and across moves") {
    const auto idx = make_index(kFib, 60000, 60);
    const auto rep = weight_check(idx, 1, idx.safe_horizon() - 1);
    CHECK(rep.ok());
    CHECK(rep.edges_checked > 50);
    CHECK(rep.bispecial_arrivals_checked > 0);

    const auto tm = make_index(kTm, 60000, 40);
    const auto trep = weight_check(tm, 1, tm.safe_horizon() - 1);
    CHECK(trep.ok());

    CHECK_THROWS_WITH_AS(weight_check(idx, 5, idx.safe_horizon() + 3),
                         doctest::Contains("BeyondHorizon"), Error);
}
