#include "shiftlab/language.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include <json.hpp>

#include "shiftlab/kernels.hpp"

namespace shiftlab {

using ordered_json = nlohmann::ordered_json;

namespace {

// Fixed multipliers keep index builds deterministic across runs.
constexpr std::uint64_t kBase1 = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kBase2 = 0xc2b2ae3d27d4eb4fULL;
constexpr std::uint32_t kEmpty = 0xffffffffu;

// 64 symbols map exactly onto the base64 alphabet for the cache dump.
constexpr char kSym64[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 16;
    while (p < v) p <<= 1;
    return p;
}

} // namespace

const char* bispecial_class_name(BispecialClass c) {
    switch (c) {
        case BispecialClass::Weak: return "weak";
        case BispecialClass::Regular: return "regular";
        case BispecialClass::Strong: return "strong";
        case BispecialClass::Nonbinary: return "nonbinary";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// open-addressing lookup keyed by a 128-bit rolling hash

void LanguageIndex::LookupTable::init(std::size_t capacity) {
    const std::size_t size = next_pow2(capacity);
    h1.assign(size, 0);
    h2.assign(size, 0);
    id.assign(size, kEmpty);
    mask = size - 1;
}

std::uint32_t* LanguageIndex::LookupTable::slot(std::uint64_t a, std::uint64_t b) {
    std::size_t i = (std::size_t)(a ^ (b >> 1)) & mask;
    while (id[i] != kEmpty && !(h1[i] == a && h2[i] == b)) i = (i + 1) & mask;
    h1[i] = a;
    h2[i] = b;
    return &id[i];
}

const std::uint32_t* LanguageIndex::LookupTable::find(std::uint64_t a,
                                                      std::uint64_t b) const {
    if (id.empty()) return nullptr;
    std::size_t i = (std::size_t)(a ^ (b >> 1)) & mask;
    while (id[i] != kEmpty) {
        if (h1[i] == a && h2[i] == b) return &id[i];
        i = (i + 1) & mask;
    }
    return nullptr;
}

std::pair<std::uint64_t, std::uint64_t> LanguageIndex::hash_word(const Symbol* word,
                                                                 std::size_t len) const {
    std::uint64_t a = 0, b = 0;
    for (std::size_t i = 0; i < len; ++i) {
        a = a * kBase1 + word[i] + 1;
        b = b * kBase2 + word[i] + 1;
    }
    return {a, b};
}

// ---------------------------------------------------------------------------
// build

LanguageIndex LanguageIndex::build(std::shared_ptr<const SymbolSequence> corpus,
                                   std::size_t max_n) {
    if (max_n < 2) raise(Errc::BadArgument, "max_n must be >= 2");
    if (corpus->length() < 4 * max_n)
        raise(Errc::PrefixTooShort, "need length >= 4*max_n (length " +
                                        std::to_string(corpus->length()) + ", max_n " +
                                        std::to_string(max_n) + ")");

    LanguageIndex idx;
    idx.corpus_ = std::move(corpus);
    idx.max_n_ = max_n;
    const std::size_t total = idx.corpus_->length();
    const std::size_t half = total / 2;
    const std::uint8_t* data = idx.corpus_->data();
    const std::size_t top = std::min(max_n + 2, total);

    idx.tables_.resize(max_n + 3);

    std::uint64_t pow1 = 1, pow2 = 1;  // kBase^(m-1)
    for (std::size_t m = 1; m <= top; ++m) {
        FactorTable& ft = idx.tables_[m];
        const std::size_t windows = total - m + 1;
        ft.lookup.init(64);
        std::size_t filled = 0;

        // pow = base^(m-1), maintained incrementally across lengths
        if (m >= 2) {
            pow1 *= kBase1;
            pow2 *= kBase2;
        }
        std::uint64_t a = 0, b = 0;
        for (std::size_t i = 0; i < m; ++i) {
            a = a * kBase1 + data[i] + 1;
            b = b * kBase2 + data[i] + 1;
        }
        for (std::size_t i = 0; i < windows; ++i) {
            std::uint32_t* slot = ft.lookup.slot(a, b);
            if (*slot == kEmpty) {
                *slot = (std::uint32_t)ft.start.size();
                ft.start.push_back((std::uint32_t)i);
                ft.count.push_back(1);
                ++filled;
                if (filled * 5 >= ft.lookup.id.size() * 3) {
                    LookupTable bigger;
                    bigger.init(ft.lookup.id.size() * 2);
                    for (std::size_t s = 0; s < ft.lookup.id.size(); ++s)
                        if (ft.lookup.id[s] != kEmpty)
                            *bigger.slot(ft.lookup.h1[s], ft.lookup.h2[s]) = ft.lookup.id[s];
                    ft.lookup = std::move(bigger);
                }
            } else {
                ++ft.count[*slot];
            }
            if (i + m < total) {
                a = (a - (std::uint64_t)(data[i] + 1) * pow1) * kBase1 + data[i + m] + 1;
                b = (b - (std::uint64_t)(data[i] + 1) * pow2) * kBase2 + data[i + m] + 1;
            }
        }

        ft.left_mask.assign(ft.start.size(), 0);
        ft.right_mask.assign(ft.start.size(), 0);
        ft.pairs.assign(ft.start.size(), {});
        ft.stable = true;
        for (std::size_t f = 0; f < ft.start.size(); ++f) {
            if (ft.count[f] < 2 || ft.start[f] + m > half) {
                ft.stable = false;
                break;
            }
        }

        // Derive extensions of shorter factors from this table.
        if (m >= 2) {
            FactorTable& prev = idx.tables_[m - 1];
            for (std::size_t f = 0; f < ft.start.size(); ++f) {
                const std::size_t s = ft.start[f];
                const Symbol first = data[s];
                const Symbol last = data[s + m - 1];
                auto hp = idx.hash_word(data + s, m - 1);
                const std::uint32_t* pid = prev.lookup.find(hp.first, hp.second);
                auto hs = idx.hash_word(data + s + 1, m - 1);
                const std::uint32_t* sid = prev.lookup.find(hs.first, hs.second);
                if (!pid || !sid) raise(Errc::MalformedPath, "factor table inconsistency");
                prev.right_mask[*pid] |= 1ULL << last;
                prev.left_mask[*sid] |= 1ULL << first;
                if (m >= 3) {
                    FactorTable& mid = idx.tables_[m - 2];
                    auto hm = idx.hash_word(data + s + 1, m - 2);
                    const std::uint32_t* mid_id = mid.lookup.find(hm.first, hm.second);
                    if (!mid_id) raise(Errc::MalformedPath, "factor table inconsistency");
                    mid.pairs[*mid_id].push_back(
                        (std::uint16_t)(((std::uint16_t)first << 8) | last));
                }
            }
        }
    }

    // Safe horizon: largest h <= max_n with every n <= h+2 stable.
    std::size_t first_bad = top + 1;
    for (std::size_t m = 1; m <= top; ++m) {
        if (!idx.tables_[m].stable) {
            first_bad = m;
            break;
        }
    }
    idx.horizon_ = (first_bad >= 3) ? std::min(max_n, first_bad - 3) : 0;

    for (std::size_t n = 1; n <= idx.horizon_; ++n) {
        if (idx.complexity(n) <= n) {
            idx.periodic_flag_ = true;
            break;
        }
    }
    return idx;
}

// ---------------------------------------------------------------------------
// accessors

void LanguageIndex::check_len(std::size_t n) const {
    if (n == 0 || n >= tables_.size())
        raise(Errc::BadArgument, "length " + std::to_string(n) + " not indexed");
}

const LanguageIndex::FactorTable& LanguageIndex::table(std::size_t n) const {
    check_len(n);
    return tables_[n];
}

std::size_t LanguageIndex::complexity(std::size_t n) const {
    if (n == 0) return 1;
    check_len(n);
    return tables_[n].start.size();
}

std::size_t LanguageIndex::factor_count(std::size_t n) const { return complexity(n); }

WordHandle LanguageIndex::factor(std::size_t n, std::size_t id) const {
    const FactorTable& ft = table(n);
    return WordHandle{ft.start.at(id), (std::uint32_t)n};
}

std::uint32_t LanguageIndex::occurrence_count(std::size_t n, std::size_t id) const {
    return table(n).count.at(id);
}

std::uint64_t LanguageIndex::left_mask(std::size_t n, std::size_t id) const {
    return table(n).left_mask.at(id);
}

std::uint64_t LanguageIndex::right_mask(std::size_t n, std::size_t id) const {
    return table(n).right_mask.at(id);
}

std::optional<std::uint32_t> LanguageIndex::find_factor(const Symbol* word,
                                                        std::size_t n) const {
    if (n == 0 || n >= tables_.size()) return std::nullopt;
    auto h = hash_word(word, n);
    const std::uint32_t* id = tables_[n].lookup.find(h.first, h.second);
    if (!id) return std::nullopt;
    return *id;
}

std::optional<std::uint32_t> LanguageIndex::find_factor(const WordHandle& w) const {
    return find_factor(corpus_->data() + w.start, w.length);
}

WordHandle LanguageIndex::handle_for(const Symbol* word, std::size_t n) const {
    auto id = find_factor(word, n);
    if (!id) raise(Errc::WordNotInLanguage, "word of length " + std::to_string(n));
    return factor(n, *id);
}

WordHandle LanguageIndex::canonical(const WordHandle& w) const {
    return handle_for(corpus_->data() + w.start, w.length);
}

bool LanguageIndex::is_special(std::size_t n, std::size_t id, Side side) const {
    const std::uint64_t m =
        side == Side::Left ? table(n).left_mask.at(id) : table(n).right_mask.at(id);
    return std::popcount(m) >= 2;
}

bool LanguageIndex::is_bispecial(std::size_t n, std::size_t id) const {
    return is_special(n, id, Side::Left) && is_special(n, id, Side::Right);
}

// ---------------------------------------------------------------------------
// spec operations

std::vector<WordHandle> LanguageIndex::extensions(const WordHandle& w, Side side) const {
    if (w.length > horizon_ + 1)
        raise(Errc::BeyondHorizon, "one-sided extensions need |w| <= horizon+1");
    auto id = find_factor(w);
    if (!id) raise(Errc::WordNotInLanguage, word_text(w));
    const std::uint64_t mask = side == Side::Left ? tables_[w.length].left_mask[*id]
                                                  : tables_[w.length].right_mask[*id];
    std::vector<Symbol> buf(w.length + 1);
    std::vector<WordHandle> out;
    for (Symbol s = 0; s < 64; ++s) {
        if (!(mask >> s & 1)) continue;
        if (side == Side::Left) {
            buf[0] = s;
            std::copy_n(corpus_->data() + w.start, w.length, buf.begin() + 1);
        } else {
            std::copy_n(corpus_->data() + w.start, w.length, buf.begin());
            buf[w.length] = s;
        }
        out.push_back(handle_for(buf.data(), buf.size()));
    }
    return out;
}

std::vector<std::pair<Symbol, Symbol>> LanguageIndex::two_sided_pairs(
    const WordHandle& w) const {
    if (w.length > horizon_)
        raise(Errc::BeyondHorizon, "two-sided extensions need |w| <= horizon");
    auto id = find_factor(w);
    if (!id) raise(Errc::WordNotInLanguage, word_text(w));
    std::vector<std::pair<Symbol, Symbol>> out;
    for (std::uint16_t packed : tables_[w.length].pairs[*id])
        out.push_back({(Symbol)(packed >> 8), (Symbol)(packed & 0xff)});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<WordHandle> LanguageIndex::extensions_two_sided(const WordHandle& w) const {
    auto pairs = two_sided_pairs(w);
    std::vector<Symbol> buf(w.length + 2);
    std::vector<WordHandle> out;
    for (auto [a, b] : pairs) {
        buf[0] = a;
        std::copy_n(corpus_->data() + w.start, w.length, buf.begin() + 1);
        buf[w.length + 1] = b;
        out.push_back(handle_for(buf.data(), buf.size()));
    }
    return out;
}

std::vector<WordHandle> LanguageIndex::special_words(std::size_t n, Side side) const {
    if (n >= horizon_)
        raise(Errc::BeyondHorizon, "special_words needs n < horizon");
    const FactorTable& ft = table(n);
    std::vector<WordHandle> out;
    for (std::size_t f = 0; f < ft.start.size(); ++f)
        if (is_special(n, f, side)) out.push_back(factor(n, f));
    return out;
}

std::vector<WordHandle> LanguageIndex::bispecial_words(std::size_t n) const {
    if (n >= horizon_)
        raise(Errc::BeyondHorizon, "bispecial_words needs n < horizon");
    const FactorTable& ft = table(n);
    std::vector<WordHandle> out;
    for (std::size_t f = 0; f < ft.start.size(); ++f)
        if (is_bispecial(n, f)) out.push_back(factor(n, f));
    return out;
}

std::size_t LanguageIndex::max_branching(std::size_t n, Side side) const {
    if (n >= horizon_)
        raise(Errc::BeyondHorizon, "max_branching needs n < horizon");
    const FactorTable& ft = table(n);
    std::size_t best = 0;
    for (std::size_t f = 0; f < ft.start.size(); ++f) {
        const std::uint64_t m = side == Side::Left ? ft.left_mask[f] : ft.right_mask[f];
        best = std::max<std::size_t>(best, (std::size_t)std::popcount(m));
    }
    return best;
}

BispecialInfo LanguageIndex::classify_bispecial(const WordHandle& w) const {
    if (w.length >= horizon_)
        raise(Errc::BeyondHorizon, "classify_bispecial needs |w| < horizon");
    auto id = find_factor(w);
    if (!id) raise(Errc::WordNotInLanguage, word_text(w));
    if (!is_bispecial(w.length, *id))
        raise(Errc::NotBispecial, word_text(w) + " is not bispecial");
    const std::size_t m = tables_[w.length].pairs[*id].size();

    // The weak/regular/strong trichotomy presumes the binary extension
    // condition at this length; otherwise report the raw pair count.
    const FactorTable& ft = tables_[w.length];
    std::size_t psi_l = 0, psi_r = 0;
    for (std::size_t f = 0; f < ft.start.size(); ++f) {
        psi_l = std::max<std::size_t>(psi_l, (std::size_t)std::popcount(ft.left_mask[f]));
        psi_r = std::max<std::size_t>(psi_r, (std::size_t)std::popcount(ft.right_mask[f]));
    }
    if (psi_l > 2 || psi_r > 2) return {BispecialClass::Nonbinary, m};
    switch (m) {
        case 2: return {BispecialClass::Weak, m};
        case 3: return {BispecialClass::Regular, m};
        case 4: return {BispecialClass::Strong, m};
        default:
            raise(Errc::MalformedPath,
                  "binary condition holds but #E_lr = " + std::to_string(m));
    }
}

GrowthReport LanguageIndex::check_growth_identity(std::size_t n) const {
    if (n >= horizon_)
        raise(Errc::BeyondHorizon, "check_growth_identity needs n < horizon");
    GrowthReport rep;
    rep.n = n;
    rep.p_n = complexity(n);
    rep.p_n1 = complexity(n + 1);
    const FactorTable& ft = tables_[n];
    std::size_t ext_total_l = 0, ext_total_r = 0;
    for (std::size_t f = 0; f < ft.start.size(); ++f) {
        const std::size_t dl = (std::size_t)std::popcount(ft.left_mask[f]);
        const std::size_t dr = (std::size_t)std::popcount(ft.right_mask[f]);
        rep.sum_left += dl - 1;
        rep.sum_right += dr - 1;
        ext_total_l += dl;
        ext_total_r += dr;
        if (dl >= 2) ++rep.special_left;
        if (dr >= 2) ++rep.special_right;
        rep.psi_left = std::max(rep.psi_left, dl);
        rep.psi_right = std::max(rep.psi_right, dr);
    }
    const std::size_t growth = rep.p_n1 - rep.p_n;
    rep.telescoping_ok = (rep.sum_left == growth) && (rep.sum_right == growth);
    rep.companion_ok = (rep.special_left + rep.psi_left <= growth + 2) &&
                       (rep.special_right + rep.psi_right <= growth + 2);
    if (!rep.telescoping_ok)
        rep.violations.push_back("telescoping mismatch at n=" + std::to_string(n) +
                                 ": left " + std::to_string(rep.sum_left) + ", right " +
                                 std::to_string(rep.sum_right) + ", p(n+1)-p(n) " +
                                 std::to_string(growth));
    if (!rep.companion_ok)
        rep.violations.push_back("companion bound violated at n=" + std::to_string(n));
    if (ext_total_l != rep.p_n1 || ext_total_r != rep.p_n1)
        rep.violations.push_back("extension sets do not partition L(n+1) at n=" +
                                 std::to_string(n));
    return rep;
}

bool LanguageIndex::binary_extension_condition(std::size_t n, Side side) const {
    return max_branching(n, side) <= 2;
}

// ---------------------------------------------------------------------------
// helpers

std::string LanguageIndex::word_text(const WordHandle& w) const {
    return corpus_->text(w.start, w.length);
}

std::vector<Symbol> LanguageIndex::word_symbols(const WordHandle& w) const {
    const std::uint8_t* d = corpus_->data();
    return std::vector<Symbol>(d + w.start, d + w.start + w.length);
}

std::optional<std::size_t> LanguageIndex::locate(const Symbol* word, std::size_t len,
                                                 std::size_t from) const {
    const std::size_t pos =
        kern::find_first(corpus_->data(), corpus_->length(), from, word, len);
    if (pos == kern::npos) return std::nullopt;
    return pos;
}

bool LanguageIndex::observed(const Symbol* word, std::size_t len) const {
    return locate(word, len).has_value();
}

// ---------------------------------------------------------------------------
// cache round-trip

void LanguageIndex::save(const std::string& path) const {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "language-index";
    ordered_json jc;
    // Alphabet letters are stored as raw ints; data as base64-alphabet text.
    ordered_json jalpha = ordered_json::array();
    for (char c : corpus_->alphabet()) jalpha.push_back((int)(unsigned char)c);
    jc["alphabet"] = jalpha;
    std::string enc(corpus_->length(), 'A');
    for (std::size_t i = 0; i < corpus_->length(); ++i) enc[i] = kSym64[corpus_->at(i)];
    jc["data"] = enc;
    jc["provenance"] = ordered_json::parse(corpus_->provenance());
    j["corpus"] = jc;
    j["max_n"] = max_n_;
    j["horizon"] = horizon_;
    j["periodic"] = periodic_flag_;

    ordered_json jt = ordered_json::array();
    for (std::size_t m = 1; m < tables_.size(); ++m) {
        const FactorTable& ft = tables_[m];
        ordered_json e;
        e["len"] = m;
        e["start"] = ft.start;
        e["count"] = ft.count;
        ordered_json lm = ordered_json::array(), rm = ordered_json::array();
        for (std::uint64_t v : ft.left_mask) lm.push_back(std::to_string(v));
        for (std::uint64_t v : ft.right_mask) rm.push_back(std::to_string(v));
        e["left_mask"] = lm;
        e["right_mask"] = rm;
        e["pairs"] = ft.pairs;
        e["stable"] = ft.stable;
        jt.push_back(e);
    }
    j["tables"] = jt;

    std::ofstream out(path);
    if (!out) raise(Errc::IoError, "cannot write " + path);
    out << j.dump() << "\n";
}

LanguageIndex LanguageIndex::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoError, "cannot open " + path);
    ordered_json j = ordered_json::parse(in);
    if (j.value("schema_version", 0) != 1 || j.value("kind", "") != "language-index")
        raise(Errc::IoError, "unrecognized index cache format");

    std::vector<char> alphabet;
    for (int v : j["corpus"]["alphabet"]) alphabet.push_back((char)v);
    const std::string enc = j["corpus"]["data"];
    std::vector<Symbol> data(enc.size());
    std::uint8_t rev[256];
    for (int i = 0; i < 64; ++i) rev[(unsigned char)kSym64[i]] = (std::uint8_t)i;
    for (std::size_t i = 0; i < enc.size(); ++i) data[i] = rev[(unsigned char)enc[i]];
    auto corpus = std::make_shared<SymbolSequence>(alphabet, std::move(data),
                                                   j["corpus"]["provenance"].dump());

    LanguageIndex idx;
    idx.corpus_ = corpus;
    idx.max_n_ = j["max_n"];
    idx.horizon_ = j["horizon"];
    idx.periodic_flag_ = j["periodic"];
    idx.tables_.resize(idx.max_n_ + 3);
    for (const auto& e : j["tables"]) {
        const std::size_t m = e["len"];
        FactorTable& ft = idx.tables_.at(m);
        ft.start = e["start"].get<std::vector<std::uint32_t>>();
        ft.count = e["count"].get<std::vector<std::uint32_t>>();
        for (const auto& v : e["left_mask"])
            ft.left_mask.push_back(std::stoull(v.get<std::string>()));
        for (const auto& v : e["right_mask"])
            ft.right_mask.push_back(std::stoull(v.get<std::string>()));
        ft.pairs = e["pairs"].get<std::vector<std::vector<std::uint16_t>>>();
        ft.stable = e["stable"];
    }
    idx.rebuild_lookup();
    return idx;
}

void LanguageIndex::rebuild_lookup() {
    const std::uint8_t* data = corpus_->data();
    for (std::size_t m = 1; m < tables_.size(); ++m) {
        FactorTable& ft = tables_[m];
        ft.lookup.init(ft.start.size() * 2 + 16);
        for (std::size_t f = 0; f < ft.start.size(); ++f) {
            auto h = hash_word(data + ft.start[f], m);
            *ft.lookup.slot(h.first, h.second) = (std::uint32_t)f;
        }
    }
}

std::size_t safe_horizon(const SymbolSequence& x, std::size_t max_n) {
    const std::size_t total = x.length();
    const std::size_t half = total / 2;
    const std::uint8_t* data = x.data();
    const std::size_t top = std::min(max_n + 2, total);

    std::size_t first_bad = top + 1;
    std::uint64_t pow1 = 1, pow2 = 1;
    for (std::size_t m = 1; m <= top && first_bad > top; ++m) {
        if (m >= 2) {
            pow1 *= kBase1;
            pow2 *= kBase2;
        }
        LanguageIndex::LookupTable lookup;
        lookup.init(64);
        std::vector<std::uint32_t> start, count;
        std::size_t filled = 0;
        std::uint64_t a = 0, b = 0;
        for (std::size_t i = 0; i < m; ++i) {
            a = a * kBase1 + data[i] + 1;
            b = b * kBase2 + data[i] + 1;
        }
        const std::size_t windows = total - m + 1;
        for (std::size_t i = 0; i < windows; ++i) {
            std::uint32_t* slot = lookup.slot(a, b);
            if (*slot == kEmpty) {
                *slot = (std::uint32_t)start.size();
                start.push_back((std::uint32_t)i);
                count.push_back(1);
                ++filled;
                if (filled * 5 >= lookup.id.size() * 3) {
                    LanguageIndex::LookupTable bigger;
                    bigger.init(lookup.id.size() * 2);
                    for (std::size_t s = 0; s < lookup.id.size(); ++s)
                        if (lookup.id[s] != kEmpty)
                            *bigger.slot(lookup.h1[s], lookup.h2[s]) = lookup.id[s];
                    lookup = std::move(bigger);
                }
            } else {
                ++count[*slot];
            }
            if (i + m < total) {
                a = (a - (std::uint64_t)(data[i] + 1) * pow1) * kBase1 + data[i + m] + 1;
                b = (b - (std::uint64_t)(data[i] + 1) * pow2) * kBase2 + data[i + m] + 1;
            }
        }
        for (std::size_t f = 0; f < start.size(); ++f) {
            if (count[f] < 2 || start[f] + m > half) {
                first_bad = m;
                break;
            }
        }
    }
    return (first_bad >= 3) ? std::min(max_n, first_bad - 3) : 0;
}

bool LanguageIndex::deep_equal(const LanguageIndex& other) const {
    if (max_n_ != other.max_n_ || horizon_ != other.horizon_ ||
        periodic_flag_ != other.periodic_flag_)
        return false;
    if (corpus_->alphabet() != other.corpus_->alphabet()) return false;
    if (corpus_->length() != other.corpus_->length()) return false;
    for (std::size_t i = 0; i < corpus_->length(); ++i)
        if (corpus_->at(i) != other.corpus_->at(i)) return false;
    if (tables_.size() != other.tables_.size()) return false;
    for (std::size_t m = 1; m < tables_.size(); ++m) {
        const FactorTable& a = tables_[m];
        const FactorTable& b = other.tables_[m];
        if (a.start != b.start || a.count != b.count || a.left_mask != b.left_mask ||
            a.right_mask != b.right_mask || a.stable != b.stable)
            return false;
        if (a.pairs.size() != b.pairs.size()) return false;
        for (std::size_t f = 0; f < a.pairs.size(); ++f) {
            auto pa = a.pairs[f];
            auto pb = b.pairs[f];
            std::sort(pa.begin(), pa.end());
            std::sort(pb.begin(), pb.end());
            if (pa != pb) return false;
        }
    }
    return true;
}

} // namespace shiftlab
