#include "shiftlab/loops.hpp"

#include <algorithm>

#include "shiftlab/kernels.hpp"

namespace shiftlab {

namespace {

std::string render(const LanguageIndex& idx, const std::vector<Symbol>& w) {
    std::string s;
    s.reserve(w.size());
    for (Symbol c : w) s.push_back(idx.corpus().letter(c));
    return s;
}

// path word split: W = P . target = source . S with |P| = |S| = weight
std::vector<Symbol> suffix_part(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                                const SpecialEdge& e) {
    auto w = path_word(idx, g, e);
    return std::vector<Symbol>(w.begin() + (long)g.n, w.end());
}

std::vector<Symbol> prefix_part(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                                const SpecialEdge& e) {
    auto w = path_word(idx, g, e);
    return std::vector<Symbol>(w.begin(), w.begin() + (long)e.weight);
}

} // namespace

bool WindingSet::contains(std::size_t m) const {
    return std::binary_search(values.begin(), values.end(), m);
}

const char* loop_move_case_name(LoopMoveCase c) {
    switch (c) {
        case LoopMoveCase::WbsCollapse: return "wbs-collapse";
        case LoopMoveCase::RbsRemove: return "rbs-remove";
        case LoopMoveCase::RbsKeep: return "rbs-keep";
        case LoopMoveCase::SbsTower: return "sbs-tower";
    }
    return "?";
}

std::vector<Loop> find_loops(const SpecialRauzyGraph& g) {
    std::vector<Loop> out;
    for (std::uint32_t u = 0; u < g.vertices.size(); ++u) {
        if (g.vertices[u].kind != VertexKind::LeftSpecial) continue;
        const auto outs = g.out_edges(u);
        if (outs.size() != 1) continue;
        const std::uint32_t uv = outs[0];
        const std::uint32_t v = g.edges[uv].to;
        if (g.vertices[v].kind != VertexKind::RightSpecial || v == u) continue;

        std::vector<std::uint32_t> back, other_in, other_out;
        for (std::uint32_t e : g.in_edges(u))
            (g.edges[e].from == v ? back : other_in).push_back(e);
        if (back.empty()) continue;
        for (std::uint32_t e : g.out_edges(v))
            if (g.edges[e].to != u) other_out.push_back(e);

        Loop loop;
        loop.u = u;
        loop.v = v;
        loop.uv_edge = uv;
        loop.vu_edge = back[0];
        loop.total_weight = g.edges[uv].weight + g.edges[back[0]].weight;
        if (back.size() == 1 && other_in.size() == 1 && other_out.size() == 1) {
            loop.wu_edge = other_in[0];
            loop.w_vertex = g.edges[other_in[0]].from;
            loop.vz_edge = other_out[0];
            loop.z_vertex = g.edges[other_out[0]].to;
            loop.degenerate = (loop.w_vertex == u || loop.w_vertex == v ||
                               loop.z_vertex == u || loop.z_vertex == v);
        } else {
            // Sturmian-like: the neighbors fold onto the loop itself
            loop.w_vertex = v;
            loop.z_vertex = u;
            loop.wu_edge = back.size() > 1 ? back[1] : back[0];
            loop.vz_edge = loop.uv_edge;
            loop.degenerate = true;
        }
        out.push_back(loop);
    }
    return out;
}

ReturnWords return_words(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                         const Loop& loop, std::size_t m_bound) {
    if (loop.degenerate)
        raise(Errc::DegenerateLoop, "return words need distinct loop neighbors");
    if (m_bound < 1) raise(Errc::BadArgument, "m_bound must be >= 1");

    const auto w_wu = path_word(idx, g, g.edges[loop.wu_edge]);
    const auto s_uv = suffix_part(idx, g, g.edges[loop.uv_edge]);
    const auto s_vu = suffix_part(idx, g, g.edges[loop.vu_edge]);
    const auto s_vz = suffix_part(idx, g, g.edges[loop.vz_edge]);

    ReturnWords rw;
    rw.base_len = w_wu.size() + s_uv.size() + s_vz.size();
    rw.step = s_uv.size() + s_vu.size();
    if (rw.step == 0) raise(Errc::DegenerateLoop, "loop of total weight 0");

    const std::size_t reliable = idx.corpus().length() / 4;
    if (rw.base_len > reliable)
        raise(Errc::BeyondHorizon, "return words exceed the reliable factor length");

    std::vector<Symbol> word = w_wu;
    for (std::size_t m = 0; m <= m_bound; ++m) {
        std::vector<Symbol> r = word;
        r.insert(r.end(), s_uv.begin(), s_uv.end());
        r.insert(r.end(), s_vz.begin(), s_vz.end());
        rw.forms.push_back(std::move(r));
        word.insert(word.end(), s_uv.begin(), s_uv.end());
        word.insert(word.end(), s_vu.begin(), s_vu.end());
    }
    return rw;
}

std::size_t default_m_bound(const LanguageIndex& idx, const ReturnWords& rw) {
    const std::size_t reliable = idx.corpus().length() / 4;
    std::size_t bound = std::max<std::size_t>(1, 4 * idx.safe_horizon() / rw.step);
    if (rw.base_len + bound * rw.step > reliable)
        bound = std::max<std::size_t>(1, (reliable - std::min(reliable, rw.base_len)) /
                                             rw.step);
    return bound;
}

WindingSet winding_set(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                       const Loop& loop, std::size_t m_bound) {
    ReturnWords probe = return_words(idx, g, loop, 1);
    if (m_bound == 0) m_bound = default_m_bound(idx, probe);
    const ReturnWords rw = return_words(idx, g, loop, m_bound);

    WindingSet ws;
    ws.n = g.n;
    ws.m_bound = m_bound;
    for (std::size_t m = 0; m < rw.forms.size(); ++m)
        if (idx.observed(rw.forms[m].data(), rw.forms[m].size())) ws.values.push_back(m);
    ws.truncated = !ws.values.empty() && ws.values.back() == m_bound;
    return ws;
}

LoopMoveCase classify_loop_move(const WindingSet& ws) {
    if (ws.truncated)
        raise(Errc::TruncatedWindingSet, "winding set truncated at m_bound");
    if (ws.values.empty() || ws.max() < 1)
        raise(Errc::EmptyWindingSet, "loop is not traversable");
    const bool has0 = ws.contains(0);
    if (ws.values.size() == 1 && ws.values[0] == 1) return LoopMoveCase::WbsCollapse;
    if (ws.values.size() == 2 && has0 && ws.values[1] == 1) return LoopMoveCase::RbsRemove;
    if (!has0 && ws.max() > 1) return LoopMoveCase::RbsKeep;
    if (has0 && ws.max() > 1) return LoopMoveCase::SbsTower;
    raise(Errc::EmptyWindingSet, "winding set matches no case");
}

MinimalReturnScan scan_minimal_returns(const LanguageIndex& idx,
                                       const SpecialRauzyGraph& g, const Loop& loop,
                                       std::size_t m_bound) {
    ReturnWords probe = return_words(idx, g, loop, 1);
    if (m_bound == 0) m_bound = default_m_bound(idx, probe);
    const ReturnWords rw = return_words(idx, g, loop, m_bound);

    const auto w_wu = path_word(idx, g, g.edges[loop.wu_edge]);
    const auto w_vz = path_word(idx, g, g.edges[loop.vz_edge]);
    const std::size_t n = g.n;
    const std::vector<Symbol> marker_y(w_wu.begin(), w_wu.begin() + (long)(n + 1));
    const std::vector<Symbol> marker_z(w_vz.end() - (long)(n + 1), w_vz.end());

    MinimalReturnScan scan;
    if (marker_y == marker_z) {
        scan.counterexamples.push_back("entry and exit markers coincide; scan skipped");
        return scan;
    }

    const auto s_uv = suffix_part(idx, g, g.edges[loop.uv_edge]);
    const auto s_vu = suffix_part(idx, g, g.edges[loop.vu_edge]);
    const auto s_vz = suffix_part(idx, g, g.edges[loop.vz_edge]);
    auto build_form = [&](std::size_t m) {
        std::vector<Symbol> r = w_wu;
        for (std::size_t k = 0; k < m; ++k) {
            r.insert(r.end(), s_uv.begin(), s_uv.end());
            r.insert(r.end(), s_vu.begin(), s_vu.end());
        }
        r.insert(r.end(), s_uv.begin(), s_uv.end());
        r.insert(r.end(), s_vz.begin(), s_vz.end());
        return r;
    };

    const std::uint8_t* data = idx.corpus().data();
    const std::size_t len = idx.corpus().length();
    std::vector<std::uint32_t> occ_y, occ_z;
    kern::collect_occurrences(data, len, marker_y.data(), marker_y.size(), occ_y);
    kern::collect_occurrences(data, len, marker_z.data(), marker_z.size(), occ_z);

    for (std::size_t i = 0; i < occ_y.size(); ++i) {
        const std::uint32_t p = occ_y[i];
        auto it = std::lower_bound(occ_z.begin(), occ_z.end(), p);
        if (it == occ_z.end()) continue;
        const std::uint32_t q = *it;
        if (i + 1 < occ_y.size() && occ_y[i + 1] <= q) continue;  // Y recurs first
        ++scan.returns_found;
        const std::size_t rlen = q + n + 1 - p;
        bool matched = false;
        if (rlen >= rw.base_len && (rlen - rw.base_len) % rw.step == 0) {
            const std::size_t m = (rlen - rw.base_len) / rw.step;
            const auto expected = m < rw.forms.size() ? rw.forms[m] : build_form(m);
            matched = kern::ranges_equal(data + p, expected.data(), rlen);
        }
        if (matched)
            ++scan.matched;
        else
            scan.counterexamples.push_back("return at position " + std::to_string(p) +
                                           " of length " + std::to_string(rlen) +
                                           " does not fit R(m)");
    }
    return scan;
}

// ---------------------------------------------------------------------------
// loop events

namespace {

const Loop* loop_with_u_word(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                             const std::vector<Loop>& loops, const std::string& u_word) {
    for (const auto& lp : loops)
        if (idx.word_text(g.vertices[lp.u].word) == u_word) return &lp;
    return nullptr;
}

} // namespace

std::vector<LoopEvent> loop_events(const LanguageIndex& idx, std::size_t n_lo,
                                   std::size_t n_hi, std::size_t m_bound) {
    std::vector<LoopEvent> events;
    for (std::size_t nb = std::max<std::size_t>(n_lo, 1);
         nb <= n_hi && nb + 2 <= idx.safe_horizon(); ++nb) {
        if (idx.bispecial_words(nb).empty()) continue;
        const auto g = special_rauzy_graph(idx, nb);
        const auto loops = find_loops(g);
        for (const auto& loop : loops) {
            if (loop.degenerate) continue;
            if (g.edges[loop.uv_edge].weight != 0) continue;  // not at its value

            LoopEvent ev;
            ev.n = nb;
            ev.n_bis = nb;
            ev.u_word = idx.word_text(g.vertices[loop.u].word);
            ev.v_word = idx.word_text(g.vertices[loop.v].word);
            ev.loop_weight = loop.total_weight;

            ev.winding = winding_set(idx, g, loop, m_bound);
            if (ev.winding.truncated || ev.winding.values.empty()) {
                ev.notes.push_back("winding set truncated or empty; event skipped");
                ev.class_agrees = true;
                ev.loop_outcome_ok = true;
                ev.identities_ok = true;
                events.push_back(std::move(ev));
                continue;
            }
            ev.predicted = classify_loop_move(ev.winding);

            const auto site = idx.handle_for(
                idx.corpus().data() + g.vertices[loop.u].word.start, nb);
            ev.observed = idx.classify_bispecial(site).cls;
            switch (ev.predicted) {
                case LoopMoveCase::WbsCollapse:
                    ev.class_agrees = ev.observed == BispecialClass::Weak;
                    break;
                case LoopMoveCase::RbsRemove:
                case LoopMoveCase::RbsKeep:
                    ev.class_agrees = ev.observed == BispecialClass::Regular;
                    break;
                case LoopMoveCase::SbsTower:
                    ev.class_agrees = ev.observed == BispecialClass::Strong;
                    break;
            }

            // successor loop about u' = first n+1 letters of the rewound loop
            const auto s_vu = suffix_part(idx, g, g.edges[loop.vu_edge]);
            const std::string u_next =
                ev.u_word + idx.corpus().letter(s_vu.empty() ? 0 : s_vu[0]);
            const auto g1 = special_rauzy_graph(idx, nb + 1);
            const auto loops1 = find_loops(g1);
            const Loop* succ = loop_with_u_word(idx, g1, loops1, u_next);
            const bool expect_loop = ev.predicted == LoopMoveCase::RbsKeep ||
                                     ev.predicted == LoopMoveCase::SbsTower;
            ev.loop_outcome_ok = (succ != nullptr) == expect_loop;

            // winding shift law at nb+1 for the cases that keep the loop
            if (expect_loop && succ && !succ->degenerate) {
                ev.shift_checked = true;
                const auto ws1 = winding_set(idx, g1, *succ, ev.winding.m_bound);
                std::vector<std::size_t> expected;
                for (std::size_t m : ev.winding.values)
                    if (m > 0) expected.push_back(m - 1);
                ev.shift_law_ok = !ws1.truncated && ws1.values == expected;
                if (ws1.truncated) {
                    ev.shift_law_ok = true;
                    ev.shift_checked = false;
                    ev.notes.push_back("successor winding set truncated; shift unchecked");
                }
            } else if (expect_loop && succ && succ->degenerate) {
                ev.notes.push_back("successor loop degenerate; shift unchecked");
            }

            // splitting identities against the loop one level earlier
            ev.identities_ok = true;
            if (nb >= 2 && nb - 1 + 1 <= idx.safe_horizon()) {
                const auto g0 = special_rauzy_graph(idx, nb - 1);
                const auto loops0 = find_loops(g0);
                const Loop* prev = nullptr;
                for (const auto& lp : loops0) {
                    if (lp.degenerate) continue;
                    const auto w_uv = path_word(idx, g0, g0.edges[lp.uv_edge]);
                    if (render(idx, w_uv) == ev.u_word) {
                        prev = &lp;
                        break;
                    }
                }
                if (prev) {
                    const auto p_uv0 = prefix_part(idx, g0, g0.edges[prev->uv_edge]);
                    const auto s_uv0 = suffix_part(idx, g0, g0.edges[prev->uv_edge]);
                    const auto w_vu0 = path_word(idx, g0, g0.edges[prev->vu_edge]);
                    const auto s_vu0 = suffix_part(idx, g0, g0.edges[prev->vu_edge]);
                    const auto p_vu0 = prefix_part(idx, g0, g0.edges[prev->vu_edge]);

                    const auto w_vu1 = path_word(idx, g, g.edges[loop.vu_edge]);
                    const auto s_vu1 = suffix_part(idx, g, g.edges[loop.vu_edge]);
                    const auto p_vu1 = prefix_part(idx, g, g.edges[loop.vu_edge]);

                    auto concat = [](std::vector<Symbol> a, const std::vector<Symbol>& b) {
                        a.insert(a.end(), b.begin(), b.end());
                        return a;
                    };
                    const bool id1 = w_vu1 == concat(concat(p_uv0, w_vu0), s_uv0);
                    const bool id2 = s_vu1 == concat(s_vu0, s_uv0);
                    const bool id3 = p_vu1 == concat(p_uv0, p_vu0);
                    const bool id4 = g.edges[loop.uv_edge].weight == 0;
                    ev.identities_ok = id1 && id2 && id3 && id4;
                    if (!ev.identities_ok)
                        ev.notes.push_back("splitting identity failed at n=" +
                                           std::to_string(nb));
                } else {
                    ev.notes.push_back("loop not visible one level earlier");
                }
            }

            // acceleration: rewind b = min(min W, max W - 1) windings; the
            // loop persists through b regular moves and its winding set
            // arrives shifted by b (min 0 unless W was a singleton)
            const std::size_t m0 = ev.winding.min();
            const std::size_t b = std::min(m0, ev.winding.max() - 1);
            if (b >= 1) {
                const std::size_t n3 = nb + b * ev.loop_weight;
                if (n3 + 2 <= idx.safe_horizon()) {
                    ev.accel_checked = true;
                    std::string accel_word = ev.u_word;
                    const std::string wind = render(idx, s_vu);
                    for (std::size_t k = 0; k < b; ++k) accel_word += wind;
                    const auto g3 = special_rauzy_graph(idx, n3);
                    const auto loops3 = find_loops(g3);
                    const Loop* land = loop_with_u_word(idx, g3, loops3, accel_word);
                    if (!land) {
                        ev.accel_ok = false;
                        ev.notes.push_back("accelerated loop missing at n=" +
                                           std::to_string(n3));
                    } else if (land->degenerate) {
                        ev.accel_checked = false;
                        ev.notes.push_back("accelerated loop degenerate at n=" +
                                           std::to_string(n3));
                    } else {
                        const auto ws3 = winding_set(idx, g3, *land, ev.winding.m_bound);
                        std::vector<std::size_t> expected;
                        for (std::size_t m : ev.winding.values) expected.push_back(m - b);
                        ev.accel_ok = !ws3.truncated && ws3.values == expected &&
                                      (m0 + 1 <= ev.winding.max() ? ws3.min() == 0
                                                                  : ws3.min() == 1);
                    }
                } else {
                    ev.notes.push_back("acceleration landing beyond horizon");
                }
            }

            events.push_back(std::move(ev));
        }
    }
    return events;
}

} // namespace shiftlab
