#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shiftlab/language.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/sequence.hpp"

namespace shiftlab {

// #_u(w): number of possibly overlapping occurrences of u in w.
std::size_t count_occurrences(const Symbol* u, std::size_t ulen, const Symbol* w,
                              std::size_t wlen);
std::size_t count_occurrences(const std::vector<Symbol>& u, const std::vector<Symbol>& w);

// r_L(w,x,j): does w begin anywhere in the j-th block of length L|w| (j >= 1)?
int block_indicator(const Symbol* w, std::size_t n, const SymbolSequence& x, std::size_t j,
                    std::size_t L);

// S_{L,N}(w,x) and D_{L,N}(w,x) = S/N.
std::size_t block_sum(const Symbol* w, std::size_t n, const SymbolSequence& x,
                      std::size_t L, std::size_t N);
Rat average_density(const Symbol* w, std::size_t n, const SymbolSequence& x, std::size_t L,
                    std::size_t N);

/*
 * Sampled stand-in for the disjoint upper density: D_{L,N} on the geometric
 * grid N = N0*2^i up to the corpus bound, with the running maximum as the
 * reported estimate. Never extrapolated.
 */
struct DensitySample {
    std::size_t N = 0;
    std::size_t hits = 0;  // S_{L,N}
    Rat density;           // D_{L,N}
};

struct DensityProfile {
    std::string word;
    std::size_t L = 0;
    std::vector<DensitySample> samples;
    Rat estimate;
};

DensityProfile density_profile(const Symbol* w, std::size_t n, const SymbolSequence& x,
                               std::size_t L, std::size_t n0 = 1);

/*
 * Empirical cylinder frequencies #_u(x_[1,M]) / M for all words up to the
 * cutoff length. Exact rationals; per length k the frequencies sum to
 * (M-k+1)/M.
 */
struct EmpiricalMeasure {
    std::size_t cutoff = 0;
    std::size_t sample_len = 0;  // M
    std::map<std::string, std::uint64_t> counts;

    Rat freq(const std::string& u) const {
        auto it = counts.find(u);
        return Rat((std::int64_t)(it == counts.end() ? 0 : it->second),
                   (std::int64_t)sample_len);
    }
    // sup over words up to min(cutoff) of |freq difference|
    Rat sup_distance(const EmpiricalMeasure& other) const;
};

EmpiricalMeasure empirical_measure(const SymbolSequence& x, std::size_t M,
                                   std::size_t cutoff, std::size_t horizon_cap);

// Frequency vector of the factors of one word (used for vertex coloring).
EmpiricalMeasure word_measure(const SymbolSequence& alphabet_source,
                              const std::vector<Symbol>& word, std::size_t cutoff);

// ---------------------------------------------------------------------------
// counting inequalities behind the density lemmas; all comparisons exact

struct IneqRow {
    std::size_t N = 0;
    std::size_t lhs_hits = 0, rhs_hits = 0;
    bool exact_ok = false;
};

struct SubwordIneqReport {
    std::size_t u_len = 0, w_len = 0, L = 0;
    std::vector<IneqRow> rows;  // 2*S'(u at nN) >= S(w at mN) - 1 per N
    Rat lhs_sup, rhs_sup, slack;
    Rat constant;  // |u| / 2|w|
    bool sup_ok = false;
    bool ok() const;
};

// u a subword of w; checks the block-count inequality behind the subword
// density bound and the sampled-sup form D(u) >= (|u|/2|w|) D(w) - slack.
SubwordIneqReport check_subword_inequality(const std::vector<Symbol>& u,
                                           const std::vector<Symbol>& w,
                                           const SymbolSequence& x, std::size_t L);

struct NeighborIneqReport {
    std::size_t u_len = 0, w_len = 0, L = 0, c = 0, p0 = 0;
    std::size_t c_hat = 0, b_hat = 0;  // b_hat = 0 in the |u| <= |w| branch
    std::size_t occurrences_checked = 0;
    std::vector<IneqRow> rows;
    Rat lhs_sup, rhs_sup, slack;
    Rat paper_constant;   // C(u,w,c,L)
    Rat actual_constant;  // data constant; must dominate the paper constant
    bool constant_ok = false;
    bool sup_ok = false;
    bool ok() const;
};

/*
 * Hypothesis: every occurrence of w at position p > p0 (1-indexed) has an
 * occurrence of u within distance c. Scan-verified first (HypothesisFails
 * with a witness position otherwise), then the residue-class counting
 * inequality and the sup-level bound with the two-branch constant are
 * asserted.
 */
NeighborIneqReport check_neighboring_inequality(const std::vector<Symbol>& u,
                                                const std::vector<Symbol>& w,
                                                const SymbolSequence& x, std::size_t L,
                                                std::size_t c, std::size_t p0);

struct LoopSubwordReport {
    std::size_t v_len = 0, vt_len = 0, a = 0, b = 0, L = 0;
    bool hypotheses_ok = false;
    std::vector<IneqRow> rows;  // 2*a_hat*S(v) >= b*(S(vt)-1) per N
    Rat lhs_sup, rhs_sup, slack;
    Rat paper_constant;  // 1/(4L + 8a/|v|)
    Rat actual_constant;
    bool constant_ok = false;
    bool sup_ok = false;
    std::string note;
    bool ok() const;
};

/*
 * The loop-word tower: |vt| = |v| + a*b, v begins at positions 1 + j*a in vt
 * for j = 0..b, and every occurrence of v lies inside an occurrence of vt
 * (all scan-verified). Asserts D(v) >= D(vt)/(4L + 8a/|v|) at the sampled
 * sup; the short-tower case |vt| <= 2|v| falls back to the subword route.
 */
LoopSubwordReport check_loop_subword_inequality(const std::vector<Symbol>& v,
                                                const std::vector<Symbol>& vt,
                                                std::size_t a, std::size_t b,
                                                const SymbolSequence& x, std::size_t L);

struct GenerationIneqReport {
    std::size_t N = 0, L = 0;
    std::size_t u_in_prefix = 0, u_in_w = 0, hits = 0;
    bool exact_ok = false;  // 2 #_u(x[1,NLn]) >= (S_{L,N}(w,x) - 1) #_u(w)
    Rat nu_hat, mu_hat, beta_hat, slack;
    bool bound_ok = false;  // nu >= (beta/2L) mu - slack
    bool ok() const { return exact_ok && bound_ok; }
};

// Finite form of the density-to-measure comparison: the word w generates
// cylinder mass for u inside x at rate beta/2L up to the printed slack.
GenerationIneqReport check_generation_inequality(const std::vector<Symbol>& w,
                                                 const SymbolSequence& x, std::size_t L,
                                                 std::size_t N,
                                                 const std::vector<Symbol>& u);

} // namespace shiftlab
