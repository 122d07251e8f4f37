#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/common.hpp"
#include "shiftlab/sequence.hpp"

namespace shiftlab {

enum class Side { Left, Right };

inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

// A factor of the corpus, canonicalized to its first occurrence. Two handles
// produced by the same index reference equal substrings iff they are equal.
struct WordHandle {
    std::uint32_t start = 0;
    std::uint32_t length = 0;
    friend bool operator==(const WordHandle& a, const WordHandle& b) {
        return a.start == b.start && a.length == b.length;
    }
    friend bool operator!=(const WordHandle& a, const WordHandle& b) { return !(a == b); }
};

enum class BispecialClass { Weak, Regular, Strong, Nonbinary };

const char* bispecial_class_name(BispecialClass c);

struct BispecialInfo {
    BispecialClass cls;
    std::size_t two_sided_count;  // #E_lr(w); the m of nonbinary(m)
};

struct GrowthReport {
    std::size_t n = 0;
    std::size_t p_n = 0, p_n1 = 0;
    std::size_t sum_left = 0, sum_right = 0;  // sum over L(n) of (#E_s(w) - 1)
    std::size_t special_left = 0, special_right = 0;
    std::size_t psi_left = 0, psi_right = 0;
    bool telescoping_ok = false;  // both sums equal p(n+1) - p(n)
    bool companion_ok = false;    // #L_s(n) + psi_s(n) <= p(n+1) - p(n) + 2
    std::vector<std::string> violations;
};

/*
 * Factor language of a fixed prefix: per-length canonical factor sets,
 * extension letter sets, two-sided extension pairs and occurrence counts,
 * for every length up to max_n + 2. All claims made through this index are
 * scoped to lengths at or below the safe horizon, which certifies that the
 * observed factor sets are stable under halving the prefix and that every
 * factor occurs at least twice.
 *
 * Immutable after build; concurrent reads are safe.
 */
class LanguageIndex {
public:
    static LanguageIndex build(std::shared_ptr<const SymbolSequence> corpus,
                               std::size_t max_n);

    const SymbolSequence& corpus() const { return *corpus_; }
    std::shared_ptr<const SymbolSequence> corpus_ptr() const { return corpus_; }
    std::size_t max_n() const { return max_n_; }
    std::size_t safe_horizon() const { return horizon_; }

    // p(n) for n <= max_n + 2 (p(0) = 1).
    std::size_t complexity(std::size_t n) const;

    std::size_t factor_count(std::size_t n) const;
    WordHandle factor(std::size_t n, std::size_t id) const;
    std::uint32_t occurrence_count(std::size_t n, std::size_t id) const;
    std::uint64_t left_mask(std::size_t n, std::size_t id) const;
    std::uint64_t right_mask(std::size_t n, std::size_t id) const;

    // Id of the factor equal to the given word, if observed.
    std::optional<std::uint32_t> find_factor(const Symbol* word, std::size_t n) const;
    std::optional<std::uint32_t> find_factor(const WordHandle& w) const;

    WordHandle handle_for(const Symbol* word, std::size_t n) const;  // WordNotInLanguage
    WordHandle canonical(const WordHandle& w) const;

    bool is_special(std::size_t n, std::size_t id, Side side) const;
    bool is_bispecial(std::size_t n, std::size_t id) const;

    // --- spec operations -----------------------------------------------

    // Observed s-extension words of w (length |w|+1, or |w|+2 two-sided).
    std::vector<WordHandle> extensions(const WordHandle& w, Side side) const;
    std::vector<WordHandle> extensions_two_sided(const WordHandle& w) const;
    std::vector<std::pair<Symbol, Symbol>> two_sided_pairs(const WordHandle& w) const;

    std::vector<WordHandle> special_words(std::size_t n, Side side) const;
    std::vector<WordHandle> bispecial_words(std::size_t n) const;

    // max{#E_side(w) : w in L(n)}; non-increasing in n.
    std::size_t max_branching(std::size_t n, Side side) const;

    BispecialInfo classify_bispecial(const WordHandle& w) const;

    GrowthReport check_growth_identity(std::size_t n) const;

    // true iff every w in L(n) has at most 2 side-extensions.
    bool binary_extension_condition(std::size_t n, Side side) const;

    // Morse-Hedlund gate: p(n0) <= n0 for some n0 <= horizon.
    bool periodic_flag() const { return periodic_flag_; }

    // --- helpers --------------------------------------------------------

    std::string word_text(const WordHandle& w) const;
    std::vector<Symbol> word_symbols(const WordHandle& w) const;
    // First occurrence of an arbitrary word in the corpus (kernel scan).
    std::optional<std::size_t> locate(const Symbol* word, std::size_t len,
                                      std::size_t from = 0) const;
    bool observed(const Symbol* word, std::size_t len) const;

    // Index cache: versioned JSON dump, exact round-trip.
    void save(const std::string& path) const;
    static LanguageIndex load(const std::string& path);

    bool deep_equal(const LanguageIndex& other) const;

    friend std::size_t safe_horizon(const SymbolSequence& x, std::size_t max_n);

private:
    LanguageIndex() = default;

    struct LookupTable {
        std::vector<std::uint64_t> h1, h2;
        std::vector<std::uint32_t> id;
        std::size_t mask = 0;
        void init(std::size_t capacity);
        std::uint32_t* slot(std::uint64_t a, std::uint64_t b);
        const std::uint32_t* find(std::uint64_t a, std::uint64_t b) const;
    };

    struct FactorTable {
        std::vector<std::uint32_t> start;
        std::vector<std::uint32_t> count;
        std::vector<std::uint64_t> left_mask;
        std::vector<std::uint64_t> right_mask;
        std::vector<std::vector<std::uint16_t>> pairs;  // packed (a<<8)|b
        LookupTable lookup;
        bool stable = true;  // half-prefix equality + min count 2
    };

    std::pair<std::uint64_t, std::uint64_t> hash_word(const Symbol* word,
                                                      std::size_t len) const;
    void rebuild_lookup();
    void check_len(std::size_t n) const;
    const FactorTable& table(std::size_t n) const;

    std::shared_ptr<const SymbolSequence> corpus_;
    std::size_t max_n_ = 0;
    std::size_t horizon_ = 0;
    bool periodic_flag_ = false;
    std::vector<FactorTable> tables_;  // index = length, 0..max_n+2
};

/*
 * Largest h <= max_n such that for every n <= h+2 the factor set of the full
 * prefix equals the factor set of its first half and every length-n factor
 * occurs at least twice. Unlike LanguageIndex::build this accepts any
 * nonempty sequence and returns 0 when nothing qualifies.
 */
std::size_t safe_horizon(const SymbolSequence& x, std::size_t max_n);

} // namespace shiftlab
