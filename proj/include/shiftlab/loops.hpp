#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/graphs.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/moves.hpp"

namespace shiftlab {

/*
 * A loop: left-special u and right-special v with mutual edges, plus the
 * adjacent vertices w (w -> u) and z (v -> z). Degenerate when the adjacency
 * is not resolved by a single extra in/out edge (Sturmian's two-vertex graph
 * folds w and z onto the loop itself).
 */
struct Loop {
    std::uint32_t u = 0, v = 0;
    std::uint32_t uv_edge = 0, vu_edge = 0;
    std::uint32_t w_vertex = 0, z_vertex = 0;
    std::uint32_t wu_edge = 0, vz_edge = 0;
    std::size_t total_weight = 0;  // rho(u->v) + rho(v->u), invariant across levels
    bool degenerate = false;
};

std::vector<Loop> find_loops(const SpecialRauzyGraph& g);

// R(m) = W(w,u) [S(u,v) S(v,u)]^m S(u,v) S(v,z); |R(m+1)| - |R(m)| = total_weight.
struct ReturnWords {
    std::vector<std::vector<Symbol>> forms;  // R(0) .. R(m_bound)
    std::size_t base_len = 0;
    std::size_t step = 0;
};

ReturnWords return_words(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                         const Loop& loop, std::size_t m_bound);

struct WindingSet {
    std::vector<std::size_t> values;  // {m <= m_bound : R(m) observed}
    bool truncated = false;           // R(m_bound) still observed
    std::size_t n = 0;
    std::size_t m_bound = 0;
    std::size_t max() const { return values.empty() ? 0 : values.back(); }
    std::size_t min() const { return values.empty() ? 0 : values.front(); }
    bool contains(std::size_t m) const;
};

std::size_t default_m_bound(const LanguageIndex& idx, const ReturnWords& rw);

WindingSet winding_set(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                       const Loop& loop, std::size_t m_bound);

enum class LoopMoveCase { WbsCollapse, RbsRemove, RbsKeep, SbsTower };

const char* loop_move_case_name(LoopMoveCase c);

LoopMoveCase classify_loop_move(const WindingSet& ws);

// Every minimal return word from Y = W(w,u)[1,n+1] to Z = W(v,z)[-n,0] found
// by direct corpus scan, checked against the R(m) forms.
struct MinimalReturnScan {
    std::size_t returns_found = 0;
    std::size_t matched = 0;
    std::vector<std::string> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};

MinimalReturnScan scan_minimal_returns(const LanguageIndex& idx,
                                       const SpecialRauzyGraph& g, const Loop& loop,
                                       std::size_t m_bound);

/*
 * Full audit of one loop event at its bispecial value: winding-set
 * classification vs the observed move class, the winding shift law at the
 * next level, the prefix/suffix splitting identities between detection level
 * and bispecial value, and the acceleration landing min W = 0.
 */
struct LoopEvent {
    std::size_t n = 0;      // detection level
    std::size_t n_bis = 0;  // bispecial value of the loop word
    std::string u_word, v_word;
    std::size_t loop_weight = 0;
    WindingSet winding;  // at n_bis
    LoopMoveCase predicted = LoopMoveCase::RbsKeep;
    BispecialClass observed = BispecialClass::Regular;
    bool class_agrees = false;
    bool loop_outcome_ok = false;  // successor-loop presence matches the case
    bool shift_checked = false;
    bool shift_law_ok = true;
    bool identities_ok = false;
    bool accel_checked = false;
    bool accel_ok = true;
    std::vector<std::string> notes;

    bool ok() const {
        return class_agrees && loop_outcome_ok && identities_ok &&
               (!shift_checked || shift_law_ok) && (!accel_checked || accel_ok);
    }
};

// One event per non-degenerate loop sitting at its own bispecial value in
// [n_lo, n_hi]. m_bound 0 selects the default bound.
std::vector<LoopEvent> loop_events(const LanguageIndex& idx, std::size_t n_lo,
                                   std::size_t n_hi, std::size_t m_bound = 0);

} // namespace shiftlab
