#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/density.hpp"
#include "shiftlab/graphs.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/rational.hpp"

namespace shiftlab {

/*
 * A maximal run of levels over which the special graph keeps one shape under
 * tracked vertex naming. Slots index the tracked vertices; words[i][s] is
 * slot s's word at level n_lo + i. Runs extend through bispecial values whose
 * moves are all regular and leave the wiring unchanged.
 */
struct StableRange {
    std::size_t n_lo = 0, n_hi = 0;
    std::vector<VertexKind> kinds;                          // per slot
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // shape at n_lo
    std::vector<std::vector<std::string>> words;            // per level, per slot
    std::size_t left_count = 0, right_count = 0;

    std::size_t length() const { return n_hi - n_lo + 1; }
};

std::vector<StableRange> stable_ranges(const LanguageIndex& idx, std::size_t n_lo,
                                       std::size_t n_hi);

// Deterministic complete-linkage clustering: merge while the max pairwise
// distance inside the merged cluster stays <= tolerance.
std::vector<std::uint32_t> complete_linkage(const std::vector<std::vector<Rat>>& dist,
                                            const Rat& tolerance);

struct ColoringReport {
    std::size_t cutoff = 0;
    Rat tolerance, baseline;
    std::vector<std::vector<Rat>> distance;  // slot x slot sup-distance matrix
    std::vector<std::uint32_t> cluster;      // per slot
    std::size_t cluster_count = 0;
    std::vector<bool> density_positive;  // literal marking: sampled D > 0
    bool density_agrees = false;         // density marking vs clustering
    std::vector<std::string> margin_warnings;
};

/*
 * Empirical coloring of a stable range: per slot, the factor-frequency
 * vector of its word at the largest level, clustered at the sup-distance
 * tolerance. A negative tolerance selects the data-driven default of five
 * times the self-distance baseline (distance between each slot's vectors at
 * the two largest levels). The literal density marking against the single
 * available orbit is computed alongside for the agreement check.
 */
ColoringReport color_vertices(const LanguageIndex& idx, const StableRange& range,
                              std::size_t cutoff, Rat tolerance = Rat(-1));

struct RuleViolation {
    std::string rule;
    std::string witness;
};

/*
 * Propagation rules for a coloring (cluster ids as colors, -1 uncolored):
 * every color holds a left- and a right-special slot, colored right-special
 * slots pull in their unique predecessor and some successor, the mirror for
 * left-special slots, and every color contains a bispecial edge.
 */
std::vector<RuleViolation> check_rules(const StableRange& range,
                                       const std::vector<int>& color);

inline std::vector<int> colors_from(const ColoringReport& rep) {
    return std::vector<int>(rep.cluster.begin(), rep.cluster.end());
}

struct BoundReport {
    bool growth_constant = false;
    std::size_t K = 0;  // meaningful only when growth_constant
    std::size_t K_left = 0, K_right = 0;
    std::size_t cluster_count = 0;
    bool min_bound_ok = false;       // #clusters <= min(K_l, K_r)
    bool km2_applicable = false;     // K >= 4
    bool km2_ok = true;              // #clusters <= K-2 when applicable
    bool large_class_trigger = false;  // some color with > 4 slots
    bool uncolored3_trigger = false;   // >= 3 uncolored slots
};

BoundReport bound_report(const LanguageIndex& idx, const StableRange& range,
                         const std::vector<int>& color);

} // namespace shiftlab
