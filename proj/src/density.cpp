#include "shiftlab/density.hpp"

#include <algorithm>

#include "shiftlab/kernels.hpp"

namespace shiftlab {

std::size_t count_occurrences(const Symbol* u, std::size_t ulen, const Symbol* w,
                              std::size_t wlen) {
    return kern::count_occurrences(w, wlen, u, ulen);
}

std::size_t count_occurrences(const std::vector<Symbol>& u, const std::vector<Symbol>& w) {
    return count_occurrences(u.data(), u.size(), w.data(), w.size());
}

int block_indicator(const Symbol* w, std::size_t n, const SymbolSequence& x, std::size_t j,
                    std::size_t L) {
    if (n == 0 || L == 0 || j == 0) raise(Errc::BadArgument, "need n, L, j >= 1");
    if (j * L * n > x.length())
        raise(Errc::BlockOutOfRange, "block " + std::to_string(j) + " ends beyond x");
    const std::size_t lo = (j - 1) * L * n;  // block starts, 0-indexed
    const std::size_t hi = j * L * n;
    const std::size_t pos = kern::find_first(x.data(), x.length(), lo, w, n);
    return pos != kern::npos && pos < hi;
}

std::size_t block_sum(const Symbol* w, std::size_t n, const SymbolSequence& x,
                      std::size_t L, std::size_t N) {
    if (n == 0 || L == 0 || N == 0) raise(Errc::BadArgument, "need n, L, N >= 1");
    if (N * L * n > x.length()) raise(Errc::BlockOutOfRange, "N L |w| exceeds |x|");
    const std::size_t block = L * n;
    std::size_t hits = 0;
    std::size_t pos = kern::find_first(x.data(), x.length(), 0, w, n);
    for (std::size_t j = 0; j < N && pos != kern::npos;) {
        const std::size_t j_of_pos = pos / block;
        if (j_of_pos >= N) break;
        if (j_of_pos >= j) {
            ++hits;
            j = j_of_pos + 1;
            // skip to the next block before searching again
            pos = kern::find_first(x.data(), x.length(), j * block, w, n);
        }
    }
    return hits;
}

Rat average_density(const Symbol* w, std::size_t n, const SymbolSequence& x, std::size_t L,
                    std::size_t N) {
    return Rat((std::int64_t)block_sum(w, n, x, L, N), (std::int64_t)N);
}

DensityProfile density_profile(const Symbol* w, std::size_t n, const SymbolSequence& x,
                               std::size_t L, std::size_t n0) {
    if (n0 == 0) n0 = 1;
    DensityProfile prof;
    for (std::size_t i = 0; i < n; ++i) prof.word.push_back(x.letter(w[i]));
    prof.L = L;
    prof.estimate = Rat(0);
    for (std::size_t N = n0; N * L * n <= x.length(); N *= 2) {
        DensitySample s;
        s.N = N;
        s.hits = block_sum(w, n, x, L, N);
        s.density = Rat((std::int64_t)s.hits, (std::int64_t)N);
        if (s.density > prof.estimate) prof.estimate = s.density;
        prof.samples.push_back(s);
    }
    return prof;
}

// ---------------------------------------------------------------------------
// empirical measures

EmpiricalMeasure empirical_measure(const SymbolSequence& x, std::size_t M,
                                   std::size_t cutoff, std::size_t horizon_cap) {
    if (M > x.length()) raise(Errc::PrefixTooShort, "M exceeds the corpus");
    if (cutoff > horizon_cap)
        raise(Errc::BeyondHorizon, "cutoff exceeds the safe horizon");
    if (M < cutoff) raise(Errc::PrefixTooShort, "M below cutoff");
    EmpiricalMeasure em;
    em.cutoff = cutoff;
    em.sample_len = M;
    std::string window;
    for (std::size_t k = 1; k <= cutoff; ++k) {
        for (std::size_t i = 0; i + k <= M; ++i) {
            window.assign(k, ' ');
            for (std::size_t t = 0; t < k; ++t) window[t] = x.letter(x.at(i + t));
            ++em.counts[window];
        }
    }
    return em;
}

EmpiricalMeasure word_measure(const SymbolSequence& alphabet_source,
                              const std::vector<Symbol>& word, std::size_t cutoff) {
    if (word.size() < cutoff) raise(Errc::CutoffTooLarge, "word shorter than cutoff");
    EmpiricalMeasure em;
    em.cutoff = cutoff;
    em.sample_len = word.size();
    std::string window;
    for (std::size_t k = 1; k <= cutoff; ++k) {
        for (std::size_t i = 0; i + k <= word.size(); ++i) {
            window.assign(k, ' ');
            for (std::size_t t = 0; t < k; ++t)
                window[t] = alphabet_source.letter(word[i + t]);
            ++em.counts[window];
        }
    }
    return em;
}

Rat EmpiricalMeasure::sup_distance(const EmpiricalMeasure& other) const {
    Rat best(0);
    auto scan = [&](const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
        for (const auto& [u, cnt] : a.counts) {
            if (u.size() > std::min(cutoff, other.cutoff)) continue;
            const Rat d = a.freq(u) - b.freq(u);
            const Rat ad = d < Rat(0) ? -d : d;
            if (ad > best) best = ad;
        }
    };
    scan(*this, other);
    scan(other, *this);
    return best;
}

// ---------------------------------------------------------------------------
// inequality checks

namespace {

std::vector<std::uint32_t> occurrences(const std::vector<Symbol>& w,
                                       const SymbolSequence& x) {
    std::vector<std::uint32_t> occ;
    kern::collect_occurrences(x.data(), x.length(), w.data(), w.size(), occ);
    return occ;
}

} // namespace

bool SubwordIneqReport::ok() const {
    if (!sup_ok || rows.empty()) return false;
    for (const auto& r : rows)
        if (!r.exact_ok) return false;
    return true;
}

SubwordIneqReport check_subword_inequality(const std::vector<Symbol>& u,
                                           const std::vector<Symbol>& w,
                                           const SymbolSequence& x, std::size_t L) {
    if (count_occurrences(u, w) == 0)
        raise(Errc::NotASubword, "u does not occur in w");
    const std::size_t m = u.size(), n = w.size();

    SubwordIneqReport rep;
    rep.u_len = m;
    rep.w_len = n;
    rep.L = L;
    rep.constant = Rat((std::int64_t)m, (std::int64_t)(2 * n));

    Rat lhs_sup(0), rhs_best(0), slack_at_best(0);
    for (std::size_t N = 1; N * L * m * n <= x.length(); N *= 2) {
        IneqRow row;
        row.N = N;
        row.lhs_hits = block_sum(u.data(), m, x, L, n * N);  // S'_{nN}
        row.rhs_hits = block_sum(w.data(), n, x, L, m * N);  // S_{mN}
        row.exact_ok = 2 * row.lhs_hits + 1 >= row.rhs_hits;
        rep.rows.push_back(row);

        const Rat du((std::int64_t)row.lhs_hits, (std::int64_t)(n * N));
        const Rat dw((std::int64_t)row.rhs_hits, (std::int64_t)(m * N));
        if (du > lhs_sup) lhs_sup = du;
        if (dw > rhs_best) {
            rhs_best = dw;
            slack_at_best = Rat(1, (std::int64_t)(2 * n * N));
        }
    }
    rep.lhs_sup = lhs_sup;
    rep.rhs_sup = rhs_best;
    rep.slack = slack_at_best;
    rep.sup_ok = !rep.rows.empty() && lhs_sup >= rep.constant * rhs_best - slack_at_best;
    return rep;
}

bool NeighborIneqReport::ok() const {
    if (!sup_ok || !constant_ok || rows.empty()) return false;
    for (const auto& r : rows)
        if (!r.exact_ok) return false;
    return true;
}

NeighborIneqReport check_neighboring_inequality(const std::vector<Symbol>& u,
                                                const std::vector<Symbol>& w,
                                                const SymbolSequence& x, std::size_t L,
                                                std::size_t c, std::size_t p0) {
    if (u.empty() || w.empty() || L == 0 || c == 0)
        raise(Errc::BadArgument, "need nonempty words, L >= 1, c >= 1");
    const std::size_t m = u.size(), n = w.size();

    NeighborIneqReport rep;
    rep.u_len = m;
    rep.w_len = n;
    rep.L = L;
    rep.c = c;
    rep.p0 = p0;

    // hypothesis scan: every occurrence of w past p0 has u within distance c.
    // Occurrences within c + |u| of the corpus end are skipped: the promised
    // u may be clipped by the finite prefix.
    const auto occ_w = occurrences(w, x);
    const auto occ_u = occurrences(u, x);
    const std::size_t tail_margin = c + m;
    for (std::uint32_t p : occ_w) {
        if ((std::size_t)p + 1 <= p0) continue;  // 1-indexed positions
        if ((std::size_t)p + tail_margin > x.length()) continue;
        auto it = std::lower_bound(occ_u.begin(), occ_u.end(), p);
        bool near = false;
        if (it != occ_u.end() && *it - p <= c) near = true;
        if (it != occ_u.begin() && p - *std::prev(it) <= c) near = true;
        if (!near)
            raise(Errc::HypothesisFails,
                  "occurrence of w at position " + std::to_string(p + 1) +
                      " has no occurrence of u within " + std::to_string(c));
        ++rep.occurrences_checked;
    }

    const std::size_t c_hat = 3 * ((c + L * n - 1) / (L * n));
    rep.c_hat = c_hat;

    std::size_t lhs_blocks_factor, rhs_blocks_factor, divisor;
    if (m <= n) {
        lhs_blocks_factor = c_hat * n;  // S'_{c^ n N}(u)
        rhs_blocks_factor = c_hat * m;  // S_{c^ m N}(w)
        divisor = c_hat;
        rep.paper_constant = Rat((std::int64_t)(m * L), (std::int64_t)(3 * n * L + 3 * c));
        rep.actual_constant = Rat((std::int64_t)m, (std::int64_t)(c_hat * n));
    } else {
        const std::size_t b_hat =
            (2 * L * m + L * n * (1 + 2 * c_hat) - 1) / (L * n * (1 + 2 * c_hat));
        rep.b_hat = b_hat;
        lhs_blocks_factor = b_hat * c_hat * n;
        rhs_blocks_factor = b_hat * c_hat * m;
        divisor = b_hat * c_hat;
        rep.paper_constant =
            Rat((std::int64_t)(L * m), (std::int64_t)(9 * L * m + 18 * c));
        rep.actual_constant = Rat((std::int64_t)m, (std::int64_t)(n * b_hat * c_hat));
    }
    rep.constant_ok = rep.actual_constant >= rep.paper_constant;

    Rat lhs_sup(0), rhs_best(0), slack_at_best(0);
    for (std::size_t N = 1; N * lhs_blocks_factor * L * m <= x.length() &&
                            N * rhs_blocks_factor * L * n <= x.length();
         N *= 2) {
        IneqRow row;
        row.N = N;
        row.lhs_hits = block_sum(u.data(), m, x, L, lhs_blocks_factor * N);
        row.rhs_hits = block_sum(w.data(), n, x, L, rhs_blocks_factor * N);
        const std::size_t drop =
            2 * ((p0 + divisor * n * L - 1) / (divisor * n * L));  // 2 ceil(p0 / (div n L))
        row.exact_ok = divisor * row.lhs_hits + divisor * drop >= row.rhs_hits;
        rep.rows.push_back(row);

        const Rat du((std::int64_t)row.lhs_hits, (std::int64_t)(lhs_blocks_factor * N));
        const Rat dw((std::int64_t)row.rhs_hits, (std::int64_t)(rhs_blocks_factor * N));
        if (du > lhs_sup) lhs_sup = du;
        if (dw > rhs_best) {
            rhs_best = dw;
            slack_at_best =
                Rat((std::int64_t)drop, (std::int64_t)(lhs_blocks_factor * N));
        }
    }
    rep.lhs_sup = lhs_sup;
    rep.rhs_sup = rhs_best;
    rep.slack = slack_at_best;
    rep.sup_ok =
        !rep.rows.empty() && lhs_sup >= rep.actual_constant * rhs_best - slack_at_best;
    return rep;
}

bool LoopSubwordReport::ok() const {
    if (!hypotheses_ok || !sup_ok || !constant_ok) return false;
    for (const auto& r : rows)
        if (!r.exact_ok) return false;
    return true;
}

LoopSubwordReport check_loop_subword_inequality(const std::vector<Symbol>& v,
                                                const std::vector<Symbol>& vt,
                                                std::size_t a, std::size_t b,
                                                const SymbolSequence& x, std::size_t L) {
    LoopSubwordReport rep;
    rep.v_len = v.size();
    rep.vt_len = vt.size();
    rep.a = a;
    rep.b = b;
    rep.L = L;
    const std::size_t m = v.size(), n = vt.size();

    // hypotheses: the length law, the arithmetic progression of v inside vt,
    // and containment of every v-occurrence in a vt-occurrence
    if (n != m + a * b) {
        rep.note = "|vt| != |v| + a*b";
        return rep;
    }
    for (std::size_t j = 0; j <= b; ++j) {
        if (!kern::ranges_equal(vt.data() + j * a, v.data(), m)) {
            rep.note = "v does not begin at position 1 + " + std::to_string(j) + "*a in vt";
            return rep;
        }
    }
    // containment is only decidable one tower away from either end of the
    // finite prefix; the excluded margins play the role of the p0 cutoff
    const auto occ_v = occurrences(v, x);
    const auto occ_vt = occurrences(vt, x);
    for (std::uint32_t p : occ_v) {
        if ((std::size_t)p < n || (std::size_t)p + n > x.length()) continue;
        auto it = std::upper_bound(occ_vt.begin(), occ_vt.end(), p);
        const bool contained =
            it != occ_vt.begin() && (std::size_t)*std::prev(it) + n >= (std::size_t)p + m;
        if (!contained) {
            rep.note = "occurrence of v at " + std::to_string(p + 1) +
                       " not contained in an occurrence of vt";
            return rep;
        }
    }
    rep.hypotheses_ok = true;

    rep.paper_constant = Rat((std::int64_t)m, (std::int64_t)(4 * L * m + 8 * a));
    if (n <= 2 * m) {
        // short tower: the subword route gives D(v) >= (m/2n) D(vt) >= D(vt)/4
        const auto sub = check_subword_inequality(v, vt, x, L);
        for (const auto& r : sub.rows) rep.rows.push_back(r);
        rep.lhs_sup = sub.lhs_sup;
        rep.rhs_sup = sub.rhs_sup;
        rep.slack = sub.slack;
        rep.actual_constant = sub.constant;
        rep.constant_ok = rep.actual_constant >= rep.paper_constant ||
                          rep.actual_constant >= Rat(1, 4);
        rep.sup_ok = sub.sup_ok;
        rep.note = "short tower; subword route";
        return rep;
    }

    const std::size_t a_hat = (L * m + a - 1) / a + 1;  // ceil(Lm/a) + 1
    rep.actual_constant = Rat((std::int64_t)(b * m), (std::int64_t)(2 * a_hat * n));
    rep.constant_ok = rep.actual_constant >= rep.paper_constant;

    Rat lhs_sup(0), rhs_best(0), slack_at_best(0);
    for (std::size_t N = 1; N * n * L * m <= x.length(); N *= 2) {
        IneqRow row;
        row.N = N;
        row.lhs_hits = block_sum(v.data(), m, x, L, N * n);    // S_{Nn}(v)
        row.rhs_hits = block_sum(vt.data(), n, x, L, N * m);   // S~_{Nm}(vt)
        row.exact_ok = 2 * a_hat * row.lhs_hits + b >= b * row.rhs_hits;
        rep.rows.push_back(row);

        const Rat dv((std::int64_t)row.lhs_hits, (std::int64_t)(N * n));
        const Rat dvt((std::int64_t)row.rhs_hits, (std::int64_t)(N * m));
        if (dv > lhs_sup) lhs_sup = dv;
        if (dvt > rhs_best) {
            rhs_best = dvt;
            slack_at_best = Rat((std::int64_t)b, (std::int64_t)(2 * a_hat * N * n));
        }
    }
    rep.lhs_sup = lhs_sup;
    rep.rhs_sup = rhs_best;
    rep.slack = slack_at_best;
    rep.sup_ok =
        !rep.rows.empty() && lhs_sup >= rep.actual_constant * rhs_best - slack_at_best;
    return rep;
}

GenerationIneqReport check_generation_inequality(const std::vector<Symbol>& w,
                                                 const SymbolSequence& x, std::size_t L,
                                                 std::size_t N,
                                                 const std::vector<Symbol>& u) {
    const std::size_t n = w.size();
    if (N * L * n > x.length()) raise(Errc::BlockOutOfRange, "N L |w| exceeds |x|");

    GenerationIneqReport rep;
    rep.N = N;
    rep.L = L;
    rep.hits = block_sum(w.data(), n, x, L, N);
    rep.u_in_w = count_occurrences(u.data(), u.size(), w.data(), n);
    rep.u_in_prefix = kern::count_occurrences(x.data(), N * L * n, u.data(), u.size());

    rep.exact_ok = 2 * rep.u_in_prefix + rep.u_in_w >= rep.hits * rep.u_in_w;

    const std::size_t M = N * L * n;
    rep.nu_hat = Rat((std::int64_t)rep.u_in_prefix, (std::int64_t)M);
    rep.mu_hat = Rat((std::int64_t)rep.u_in_w, (std::int64_t)n);
    rep.beta_hat = Rat((std::int64_t)rep.hits, (std::int64_t)N);
    rep.slack = rep.mu_hat / Rat((std::int64_t)(2 * L * N));
    rep.bound_ok =
        rep.nu_hat >= (rep.beta_hat / Rat((std::int64_t)(2 * L))) * rep.mu_hat - rep.slack;
    return rep;
}

} // namespace shiftlab
