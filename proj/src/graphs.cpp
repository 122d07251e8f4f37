#include "shiftlab/graphs.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "shiftlab/kernels.hpp"

namespace shiftlab {

std::vector<std::uint32_t> SpecialRauzyGraph::out_edges(std::uint32_t v) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t e = 0; e < edges.size(); ++e)
        if (edges[e].from == v) out.push_back(e);
    return out;
}

std::vector<std::uint32_t> SpecialRauzyGraph::in_edges(std::uint32_t v) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t e = 0; e < edges.size(); ++e)
        if (edges[e].to == v) out.push_back(e);
    return out;
}

namespace {

// Kosaraju on a tiny adjacency list.
bool is_strongly_connected(std::size_t nverts,
                           const std::vector<std::pair<std::uint32_t, std::uint32_t>>& arcs) {
    if (nverts == 0) return false;
    std::vector<std::vector<std::uint32_t>> fwd(nverts), rev(nverts);
    for (auto [a, b] : arcs) {
        fwd[a].push_back(b);
        rev[b].push_back(a);
    }
    auto reaches_all = [&](const std::vector<std::vector<std::uint32_t>>& adj) {
        std::vector<char> seen(nverts, 0);
        std::vector<std::uint32_t> stack = {0};
        seen[0] = 1;
        std::size_t visited = 1;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++visited;
                    stack.push_back(w);
                }
        }
        return visited == nverts;
    };
    return reaches_all(fwd) && reaches_all(rev);
}

std::uint32_t fnv32(const std::uint8_t* data, std::size_t len) {
    std::uint32_t h = 2166136261u;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 16777619u;
    }
    return h;
}

std::string elided_label(const LanguageIndex& idx, const WordHandle& w) {
    const std::string text = idx.word_text(w);
    if (text.size() <= 12) return text;
    char hex[16];
    std::snprintf(hex, sizeof hex, "%08x",
                  fnv32(idx.corpus().data() + w.start, w.length));
    return text.substr(0, 4) + ".." + text.substr(text.size() - 4) + "#" + hex;
}

} // namespace

RauzyGraph rauzy_graph(const LanguageIndex& idx, std::size_t n) {
    if (n + 1 > idx.safe_horizon())
        raise(Errc::BeyondHorizon, "rauzy_graph needs n+1 <= horizon");
    RauzyGraph g;
    g.n = n;
    g.vertex_count = idx.factor_count(n);
    const std::uint8_t* data = idx.corpus().data();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    for (std::size_t f = 0; f < idx.factor_count(n + 1); ++f) {
        const WordHandle w = idx.factor(n + 1, f);
        const auto from = idx.find_factor(data + w.start, n);
        const auto to = idx.find_factor(data + w.start + 1, n);
        if (!from || !to) raise(Errc::MalformedPath, "edge endpoints missing from index");
        g.edges.push_back({*from, *to, (std::uint32_t)f});
        arcs.push_back({*from, *to});
    }
    g.strongly_connected = is_strongly_connected(g.vertex_count, arcs);
    return g;
}

SpecialRauzyGraph special_rauzy_graph(const LanguageIndex& idx, std::size_t n) {
    if (n + 1 > idx.safe_horizon())
        raise(Errc::BeyondHorizon, "special_rauzy_graph needs n+1 <= horizon");

    SpecialRauzyGraph g;
    g.n = n;
    const std::size_t fcount = idx.factor_count(n);
    std::vector<std::int32_t> end_vertex(fcount, -1);    // where paths terminate
    std::vector<std::int32_t> start_vertex(fcount, -1);  // where paths begin

    for (std::size_t f = 0; f < fcount; ++f) {
        const bool ls = idx.is_special(n, f, Side::Left);
        const bool rs = idx.is_special(n, f, Side::Right);
        if (!ls && !rs) continue;
        if (ls && rs) {
            end_vertex[f] = (std::int32_t)g.vertices.size();
            g.vertices.push_back({idx.factor(n, f), VertexKind::LeftSpecial});
            start_vertex[f] = (std::int32_t)g.vertices.size();
            g.vertices.push_back({idx.factor(n, f), VertexKind::RightSpecial});
            ++g.left_count;
            ++g.right_count;
        } else if (ls) {
            end_vertex[f] = start_vertex[f] = (std::int32_t)g.vertices.size();
            g.vertices.push_back({idx.factor(n, f), VertexKind::LeftSpecial});
            ++g.left_count;
        } else {
            end_vertex[f] = start_vertex[f] = (std::int32_t)g.vertices.size();
            g.vertices.push_back({idx.factor(n, f), VertexKind::RightSpecial});
            ++g.right_count;
        }
    }

    const std::uint8_t* data = idx.corpus().data();
    const std::size_t step_cap = idx.factor_count(n + 1) + 1;
    std::vector<Symbol> path;

    for (std::size_t f = 0; f < fcount; ++f) {
        if (start_vertex[f] < 0) continue;
        const WordHandle w = idx.factor(n, f);
        const std::uint64_t rmask = idx.right_mask(n, f);
        for (Symbol b = 0; b < 64; ++b) {
            if (!(rmask >> b & 1)) continue;
            // follow the unique special-avoiding continuation
            path.assign(data + w.start, data + w.start + n);
            path.push_back(b);
            std::size_t steps = 1;
            std::uint32_t cur;
            for (;;) {
                const auto cur_id = idx.find_factor(path.data() + steps, n);
                if (!cur_id) raise(Errc::MalformedPath, "walk left the language");
                cur = *cur_id;
                if (end_vertex[cur] >= 0) break;
                const std::uint64_t m = idx.right_mask(n, cur);
                if (std::popcount(m) != 1)
                    raise(Errc::MalformedPath, "non-special vertex with branching");
                path.push_back((Symbol)std::countr_zero(m));
                if (++steps > step_cap)
                    raise(Errc::MalformedPath,
                          "special-avoiding walk exceeded p(n+1) steps");
            }
            const std::size_t pos =
                kern::find_first(data, idx.corpus().length(), 0, path.data(), path.size());
            if (pos == kern::npos)
                raise(Errc::MalformedPath, "path word not observed in corpus");
            SpecialEdge e;
            e.from = (std::uint32_t)start_vertex[f];
            e.to = (std::uint32_t)end_vertex[cur];
            e.weight = (std::uint32_t)steps;
            e.path_start = (std::uint32_t)pos;
            e.out_letter = b;
            e.in_letter = path[path.size() - n - 1];
            g.edges.push_back(e);
        }
    }

    // zero-weight pair edge per bispecial word
    for (std::size_t f = 0; f < fcount; ++f) {
        if (end_vertex[f] >= 0 && start_vertex[f] >= 0 && end_vertex[f] != start_vertex[f]) {
            SpecialEdge e;
            e.from = (std::uint32_t)end_vertex[f];
            e.to = (std::uint32_t)start_vertex[f];
            e.weight = 0;
            e.path_start = idx.factor(n, f).start;
            g.edges.push_back(e);
        }
    }
    return g;
}

std::vector<Symbol> path_word(const LanguageIndex& idx, const SpecialRauzyGraph& g,
                              const SpecialEdge& e) {
    const std::uint8_t* data = idx.corpus().data();
    return std::vector<Symbol>(data + e.path_start, data + e.path_start + g.n + e.weight);
}

std::vector<std::uint32_t> tracked_correspondence(const LanguageIndex& idx,
                                                  const SpecialRauzyGraph& g1,
                                                  const SpecialRauzyGraph& g2) {
    std::vector<std::uint32_t> corr(g1.vertices.size());
    std::vector<Symbol> buf;
    const std::uint8_t* data = idx.corpus().data();
    for (std::size_t v = 0; v < g1.vertices.size(); ++v) {
        const SpecialVertex& sv = g1.vertices[v];
        const auto id = idx.find_factor(sv.word);
        if (!id) raise(Errc::CorrespondenceIncomplete, "vertex word missing");
        if (idx.is_bispecial(g1.n, *id))
            raise(Errc::CorrespondenceIncomplete,
                  "bispecial vertex " + idx.word_text(sv.word) +
                      " has no tracked image; use the moves module");
        buf.clear();
        if (sv.kind == VertexKind::LeftSpecial) {
            const std::uint64_t m = idx.right_mask(g1.n, *id);
            buf.assign(data + sv.word.start, data + sv.word.start + sv.word.length);
            buf.push_back((Symbol)std::countr_zero(m));
        } else {
            const std::uint64_t m = idx.left_mask(g1.n, *id);
            buf.push_back((Symbol)std::countr_zero(m));
            buf.insert(buf.end(), data + sv.word.start,
                       data + sv.word.start + sv.word.length);
        }
        bool found = false;
        for (std::size_t u = 0; u < g2.vertices.size(); ++u) {
            const SpecialVertex& tv = g2.vertices[u];
            if (tv.kind != sv.kind || tv.word.length != buf.size()) continue;
            if (kern::ranges_equal(data + tv.word.start, buf.data(), buf.size())) {
                corr[v] = (std::uint32_t)u;
                found = true;
                break;
            }
        }
        if (!found)
            raise(Errc::CorrespondenceIncomplete,
                  "tracked image of " + idx.word_text(sv.word) + " not a vertex");
    }
    return corr;
}

bool unweighted_equal(const SpecialRauzyGraph& g1, const SpecialRauzyGraph& g2,
                      const std::vector<std::uint32_t>& correspondence) {
    if (correspondence.size() != g1.vertices.size()) return false;
    if (g1.vertices.size() != g2.vertices.size()) return false;
    if (g1.edges.size() != g2.edges.size()) return false;
    std::vector<char> hit(g2.vertices.size(), 0);
    for (std::size_t v = 0; v < g1.vertices.size(); ++v) {
        const std::uint32_t u = correspondence[v];
        if (u >= g2.vertices.size() || hit[u]) return false;
        hit[u] = 1;
        if (g1.vertices[v].kind != g2.vertices[u].kind) return false;
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> count;
    for (const auto& e : g1.edges) ++count[{correspondence[e.from], correspondence[e.to]}];
    for (const auto& e : g2.edges) --count[{e.from, e.to}];
    for (const auto& [k, c] : count)
        if (c != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// DOT

std::string dot_export(const LanguageIndex& idx, const SpecialRauzyGraph& g) {
    std::vector<std::size_t> order(g.vertices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t v) {
        return std::pair<std::string, char>(idx.word_text(g.vertices[v].word),
                                            kind_letter(g.vertices[v].kind));
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    std::vector<std::size_t> rank(g.vertices.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    std::ostringstream out;
    out << "digraph gspec {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
        const SpecialVertex& sv = g.vertices[order[i]];
        out << "  v" << i << " [label=\"" << elided_label(idx, sv.word) << "@" << g.n
            << kind_letter(sv.kind) << "\"];\n";
    }
    std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> arcs;
    for (const auto& e : g.edges) arcs.push_back({rank[e.from], rank[e.to], e.weight});
    std::sort(arcs.begin(), arcs.end());
    for (const auto& [a, b, w] : arcs)
        out << "  v" << a << " -> v" << b << " [label=\"" << w << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string dot_export_raw(const LanguageIndex& idx, const RauzyGraph& g) {
    std::vector<std::size_t> order(g.vertex_count);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return idx.word_text(idx.factor(g.n, a)) < idx.word_text(idx.factor(g.n, b));
    });
    std::vector<std::size_t> rank(g.vertex_count);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    std::ostringstream out;
    out << "digraph rauzy {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < order.size(); ++i)
        out << "  v" << i << " [label=\""
            << elided_label(idx, idx.factor(g.n, order[i])) << "@" << g.n << "\"];\n";
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (const auto& e : g.edges) arcs.push_back({rank[e.from], rank[e.to]});
    std::sort(arcs.begin(), arcs.end());
    for (const auto& [a, b] : arcs) out << "  v" << a << " -> v" << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace shiftlab
