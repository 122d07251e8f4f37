#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/language.hpp"

namespace shiftlab {

inline constexpr Symbol kNoLetter = 0xff;

// Rauzy graph: vertices are the length-n factors (by factor id), one edge
// per length-(n+1) factor.
struct RauzyGraph {
    std::size_t n = 0;
    std::size_t vertex_count = 0;
    struct Edge {
        std::uint32_t from, to;  // factor ids at length n
        std::uint32_t word_id;   // factor id at length n+1
    };
    std::vector<Edge> edges;
    bool strongly_connected = false;
};

enum class VertexKind : std::uint8_t { LeftSpecial, RightSpecial };

inline char kind_letter(VertexKind k) { return k == VertexKind::LeftSpecial ? 'l' : 'r'; }

struct SpecialVertex {
    WordHandle word;
    VertexKind kind;
};

struct SpecialEdge {
    std::uint32_t from = 0, to = 0;  // indices into vertices
    std::uint32_t weight = 0;        // contracted path length; 0 iff bispecial pair edge
    std::uint32_t path_start = 0;    // canonical corpus position; path word length n+weight
    Symbol out_letter = kNoLetter;   // letter after the source word along the path
    Symbol in_letter = kNoLetter;    // letter before the target word along the path
};

/*
 * Special Rauzy graph: one vertex per unispecial word, a split pair per
 * bispecial word joined by a weight-0 edge, and one weighted edge per maximal
 * special-avoiding path of the Rauzy graph.
 */
struct SpecialRauzyGraph {
    std::size_t n = 0;
    std::vector<SpecialVertex> vertices;
    std::vector<SpecialEdge> edges;
    std::size_t left_count = 0;   // K_l(n)
    std::size_t right_count = 0;  // K_r(n)

    std::size_t weight_sum() const {
        std::size_t s = 0;
        for (const auto& e : edges) s += e.weight;
        return s;
    }
    std::vector<std::uint32_t> out_edges(std::uint32_t v) const;
    std::vector<std::uint32_t> in_edges(std::uint32_t v) const;
};

RauzyGraph rauzy_graph(const LanguageIndex& idx, std::size_t n);

SpecialRauzyGraph special_rauzy_graph(const LanguageIndex& idx, std::size_t n);

std::vector<Symbol> path_word(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                              const SpecialEdge& e);

/*
 * Vertex map from g1 to g2 by unique-special-extension tracking (g2 built at
 * n+1). Raises CorrespondenceIncomplete when g1 contains a bispecial pair:
 * images across a bispecial move are move-dependent.
 */
std::vector<std::uint32_t> tracked_correspondence(const LanguageIndex& idx,
                                                  const SpecialRauzyGraph& g1,
                                                  const SpecialRauzyGraph& g2);

// Edge-set equality under the vertex map, weights ignored.
bool unweighted_equal(const SpecialRauzyGraph& g1, const SpecialRauzyGraph& g2,
                      const std::vector<std::uint32_t>& correspondence);

std::string dot_export(const LanguageIndex& idx, const SpecialRauzyGraph& g);
std::string dot_export_raw(const LanguageIndex& idx, const RauzyGraph& g);

} // namespace shiftlab
