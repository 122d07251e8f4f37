#pragma once

// Brute-force oracles for the unit and acceptance suites. Everything here is
// deliberately naive (std::string + std::set enumeration) and independent of
// the indexed implementations it cross-checks.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "shiftlab/sequence.hpp"

namespace oracle {

inline std::set<std::string> factor_set(const std::string& text, std::size_t n) {
    std::set<std::string> out;
    if (n == 0 || n > text.size()) return out;
    for (std::size_t i = 0; i + n <= text.size(); ++i) out.insert(text.substr(i, n));
    return out;
}

inline std::size_t complexity(const std::string& text, std::size_t n) {
    return factor_set(text, n).size();
}

inline std::set<std::string> left_extensions(const std::string& text,
                                             const std::string& w) {
    std::set<std::string> out;
    for (const auto& f : factor_set(text, w.size() + 1))
        if (f.substr(1) == w) out.insert(f);
    return out;
}

inline std::set<std::string> right_extensions(const std::string& text,
                                              const std::string& w) {
    std::set<std::string> out;
    for (const auto& f : factor_set(text, w.size() + 1))
        if (f.substr(0, w.size()) == w) out.insert(f);
    return out;
}

inline std::set<std::string> two_sided_extensions(const std::string& text,
                                                  const std::string& w) {
    std::set<std::string> out;
    for (const auto& f : factor_set(text, w.size() + 2))
        if (f.substr(1, w.size()) == w) out.insert(f);
    return out;
}

inline std::size_t count_occurrences(const std::string& u, const std::string& w) {
    if (u.empty() || u.size() > w.size()) return 0;
    std::size_t c = 0;
    for (std::size_t i = 0; i + u.size() <= w.size(); ++i)
        if (w.compare(i, u.size(), u) == 0) ++c;
    return c;
}

// Fixed point of a substitution by plain string rewriting.
inline std::string iterate_substitution(const std::map<char, std::string>& rules,
                                        char seed, std::size_t min_length) {
    std::string w(1, seed);
    while (w.size() < min_length) {
        std::string next;
        for (char c : w) next += rules.at(c);
        w = next;
    }
    return w;
}

// Block-hit sum S_{L,N}(w, x) by direct scanning (independent counting route).
inline std::size_t block_sum(const std::string& w, const std::string& x, std::size_t L,
                             std::size_t N) {
    const std::size_t n = w.size();
    std::size_t s = 0;
    for (std::size_t j = 1; j <= N; ++j) {
        bool hit = false;
        for (std::size_t i = (j - 1) * L * n; i < j * L * n && !hit; ++i)
            if (i + n <= x.size() && x.compare(i, n, w) == 0) hit = true;
        if (hit) ++s;
    }
    return s;
}

} // namespace oracle
