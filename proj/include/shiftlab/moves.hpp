#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "shiftlab/graphs.hpp"
#include "shiftlab/language.hpp"

namespace shiftlab {

/*
 * Unweighted working graph for move predictions. Vertices carry rendered
 * word text; edges keep the letter annotations needed to resolve the
 * rewiring of later moves at the same length ('\0' when unknown). pair_edge
 * marks the weight-0 edge joining a bispecial split pair.
 */
struct AbstractVertex {
    std::string word;
    VertexKind kind;
};

struct AbstractEdge {
    std::uint32_t from = 0, to = 0;
    char out_letter = '\0';
    char in_letter = '\0';
    bool pair_edge = false;
};

struct AbstractGraph {
    std::vector<AbstractVertex> vertices;
    std::vector<AbstractEdge> edges;
};

AbstractGraph abstract_from(const LanguageIndex& idx, const SpecialRauzyGraph& g);

// Word-keyed shape with split pairs contracted: vertex set plus edge multiset
// with pair edges dropped. Two graphs predict the same special graph iff
// these forms coincide.
struct ComparisonForm {
    std::set<std::string> vertices;
    std::multiset<std::pair<std::string, std::string>> edges;
    bool operator==(const ComparisonForm&) const = default;
};

ComparisonForm comparison_form(const AbstractGraph& g);

struct BispecialRecord {
    std::string word;
    std::size_t n = 0;
    BispecialInfo info{BispecialClass::Regular, 0};
    std::vector<std::pair<char, char>> pairs;  // two-sided extension letters
};

/*
 * Applies one bispecial move to the split pair joined by edge
 * `pair_edge_index`. The rewiring is resolved by chasing traffic through the
 * site: an in-edge arriving on left letter a continues through the pair
 * (a,b) and down the old out-edge for b until it reaches a vertex that
 * survives at length n+1 (a new vertex aw or wb when that word is special,
 * or the old target of a consumed out-edge). cls selects the reading of the
 * result only; the rewiring itself is fully determined by the pairing.
 */
AbstractGraph apply_move(const AbstractGraph& g, std::size_t pair_edge_index,
                         BispecialClass cls,
                         const std::vector<std::pair<char, char>>& pairs);

struct MoveTrace {
    std::size_t n = 0;
    std::vector<BispecialRecord> records;
    std::vector<AbstractGraph> intermediates;  // graph after each applied move
    bool predicted = false;  // false: nonbinary fallback, no rewrite applied
    bool match = false;
    std::string witness;  // first mismatch, empty when match
    // for surviving renamed site vertices (regular moves): old word ->
    // (new left-special word, new right-special word)
    std::map<std::string, std::pair<std::string, std::string>> site_renames;
};

// Smallest n' >= n such that L(n') contains a bispecial word.
std::size_t next_bispecial(const LanguageIndex& idx, std::size_t n);

/*
 * Classifies every bispecial word of length n, applies the moves one at a
 * time (lexicographic order, or reversed), and compares the predicted
 * unweighted graph against the constructed one at n+1.
 */
MoveTrace evolve(const LanguageIndex& idx, std::size_t n, bool reverse_order = false);

struct WeightCheckReport {
    std::size_t n_from = 0, n_to = 0;
    std::size_t edges_checked = 0;
    std::size_t bispecial_arrivals_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/*
 * Verifies the per-step weight updates for every edge with unispecial
 * endpoints between consecutive levels in [n_from, n_to]: same-kind
 * endpoints keep their weight, right-to-left edges gain 1, left-to-right
 * edges lose 1 and their path word is bispecial exactly when the weight
 * reaches 0.
 */
WeightCheckReport weight_check(const LanguageIndex& idx, std::size_t n_from,
                               std::size_t n_to);

} // namespace shiftlab
