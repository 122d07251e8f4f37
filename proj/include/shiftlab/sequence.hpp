#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/common.hpp"
#include "shiftlab/rational.hpp"

namespace shiftlab {

/*
 * A finite prefix of a generic point of a minimal shift. Symbols are stored
 * as indices into an ordered alphabet of at most 64 printable byte values.
 * The provenance string is a JSON descriptor from which the exact same
 * sequence can be regenerated.
 */
class SymbolSequence {
public:
    SymbolSequence(std::vector<char> alphabet, std::vector<Symbol> data,
                   std::string provenance);

    std::size_t length() const { return data_.size(); }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    Symbol at(std::size_t i) const { return data_[i]; }
    const std::uint8_t* data() const { return data_.data(); }
    char letter(Symbol s) const { return alphabet_[s]; }
    const std::vector<char>& alphabet() const { return alphabet_; }
    const std::string& provenance() const { return provenance_; }

    // Human-readable rendering of data_[pos, pos+len).
    std::string text(std::size_t pos, std::size_t len) const;
    std::string text() const { return text(0, data_.size()); }

private:
    std::vector<char> alphabet_;
    std::vector<Symbol> data_;
    std::string provenance_;
};

// Fixed point of a non-erasing substitution, iterated from `seed` until the
// first iterate of length >= min_length (returned whole, not clipped).
SymbolSequence generate_substitution(const std::map<char, std::string>& rules,
                                     char seed, std::size_t min_length);

/*
 * Rotation coding x_n = 1 iff {n*alpha + intercept} in [1-alpha, 1), n >= 1,
 * computed in exact integer arithmetic against a continued-fraction
 * convergent of alpha.
 *
 * `quotients` are positive partial quotients of alpha in (0,1). With
 * `repeat_quotients` (the CLI default) the list is extended periodically, so
 * it denotes a quadratic irrational and convergents are taken until the
 * approximation is finer than 1/length^2. With repeat_quotients=false the
 * list is a literal finite continued fraction: the exact rational it denotes
 * is rejected as RationalSlope when its period fits in the requested window
 * (q <= length), and as InsufficientPrecision when q*q_prev < length^2.
 */
SymbolSequence generate_sturmian(const std::vector<std::uint64_t>& quotients,
                                 Rat intercept, std::size_t length,
                                 bool repeat_quotients = true);

/*
 * Codes the forward orbit of `start` under the interval exchange with the
 * given rational lengths (summing to 1) and top permutation, one symbol per
 * step. The permutation must be irreducible and the coding is scanned for a
 * period <= length/4, which is reported as NonMinimalDetected.
 */
SymbolSequence generate_iet_coding(const std::vector<Rat>& lengths,
                                   const std::vector<int>& permutation,
                                   Rat start, std::size_t length);

SymbolSequence load_sequence(const std::string& path,
                             const std::optional<std::vector<char>>& alphabet_hint = {});

// Raw bytes, one symbol per byte; provenance goes to `path`.meta.json.
void save_sequence(const SymbolSequence& seq, const std::string& path);

// Smallest p with w[i] = w[i+p] for all valid i (border-based weak period).
std::size_t smallest_period(const std::uint8_t* data, std::size_t len);

} // namespace shiftlab
