#include "shiftlab/sequence.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

namespace shiftlab {

using ordered_json = nlohmann::ordered_json;

SymbolSequence::SymbolSequence(std::vector<char> alphabet, std::vector<Symbol> data,
                               std::string provenance)
    : alphabet_(std::move(alphabet)), data_(std::move(data)),
      provenance_(std::move(provenance)) {
    if (alphabet_.size() < 2) raise(Errc::BadArgument, "alphabet must have >= 2 symbols");
    if (alphabet_.size() > 64) raise(Errc::AlphabetTooLarge, "alphabet capped at 64 symbols");
    if (data_.empty()) raise(Errc::BadArgument, "sequence must be nonempty");
    for (Symbol s : data_)
        if (s >= alphabet_.size()) raise(Errc::BadArgument, "symbol index out of range");
}

std::string SymbolSequence::text(std::size_t pos, std::size_t len) const {
    std::string out;
    out.reserve(len);
    for (std::size_t i = pos; i < pos + len && i < data_.size(); ++i)
        out.push_back(alphabet_[data_[i]]);
    return out;
}

// ---------------------------------------------------------------------------
// substitution fixed point

SymbolSequence generate_substitution(const std::map<char, std::string>& rules,
                                     char seed, std::size_t min_length) {
    if (rules.empty()) raise(Errc::BadArgument, "no substitution rules");
    if (min_length == 0) raise(Errc::BadArgument, "min_length must be >= 1");

    std::vector<char> alphabet;
    for (const auto& [sym, image] : rules) {
        alphabet.push_back(sym);
        if (image.empty())
            raise(Errc::BadArgument, std::string("empty image for '") + sym + "'");
    }
    std::sort(alphabet.begin(), alphabet.end());
    for (const auto& [sym, image] : rules)
        for (char c : image)
            if (!rules.count(c))
                raise(Errc::RuleDomainIncomplete,
                      std::string("image symbol '") + c + "' has no rule");
    if (!rules.count(seed)) raise(Errc::RuleDomainIncomplete, "seed has no rule");

    const std::string& seed_image = rules.at(seed);
    if (seed_image[0] != seed)
        raise(Errc::NonProlongable, "image of seed does not start with seed");
    if (seed_image.size() < 2 && min_length > 1)
        raise(Errc::NonGrowing, "image of seed has length < 2");

    std::string word(1, seed);
    while (word.size() < min_length) {
        std::string next;
        next.reserve(word.size() * 2);
        for (char c : word) next += rules.at(c);
        if (next.size() <= word.size())
            raise(Errc::NonGrowing, "substitution iterate stopped growing");
        word.swap(next);
    }

    std::vector<Symbol> data(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), word[i]);
        data[i] = (Symbol)(it - alphabet.begin());
    }

    ordered_json prov;
    prov["kind"] = "substitution";
    ordered_json jr;
    for (const auto& [sym, image] : rules) jr[std::string(1, sym)] = image;
    prov["rules"] = jr;
    prov["seed"] = std::string(1, seed);
    prov["min_length"] = min_length;
    return SymbolSequence(std::move(alphabet), std::move(data), prov.dump());
}

// ---------------------------------------------------------------------------
// rotation coding

namespace {

struct Convergents {
    std::uint64_t p = 0, q = 1;        // current
    std::uint64_t pp = 1, qp = 0;      // previous
    // Returns false when the next step would overflow int64.
    bool step(std::uint64_t a) {
        const __int128 np = (__int128)a * p + pp;
        const __int128 nq = (__int128)a * q + qp;
        if (np > INT64_MAX || nq > INT64_MAX) return false;
        pp = p; qp = q;
        p = (std::uint64_t)np;
        q = (std::uint64_t)nq;
        return true;
    }
};

} // namespace

SymbolSequence generate_sturmian(const std::vector<std::uint64_t>& quotients,
                                 Rat intercept, std::size_t length,
                                 bool repeat_quotients) {
    if (quotients.empty()) raise(Errc::BadArgument, "no partial quotients");
    if (length == 0) raise(Errc::BadArgument, "length must be >= 1");
    for (std::uint64_t a : quotients)
        if (a == 0) raise(Errc::BadArgument, "partial quotients must be positive");

    const __int128 target = (__int128)length * length;
    Convergents cv;
    bool resolved = false;
    if (repeat_quotients) {
        for (std::size_t i = 0; !resolved; ++i) {
            if (!cv.step(quotients[i % quotients.size()]))
                raise(Errc::InsufficientPrecision,
                      "convergents exceed int64 before reaching 1/length^2");
            resolved = (__int128)cv.q * cv.qp > target;
        }
    } else {
        for (std::uint64_t a : quotients)
            if (!cv.step(a))
                raise(Errc::InsufficientPrecision, "convergents exceed int64");
        if (cv.q <= length)
            raise(Errc::RationalSlope,
                  "rational slope " + std::to_string(cv.p) + "/" + std::to_string(cv.q) +
                      " is periodic within the requested length");
        if ((__int128)cv.q * cv.qp <= target)
            raise(Errc::InsufficientPrecision,
                  "convergent too coarse for requested length");
    }

    // All positions live on the grid Z/Q with Q = lcm(q, intercept denominator).
    const std::uint64_t q = cv.q, p = cv.p % cv.q;
    std::int64_t ib = intercept.den();
    const std::uint64_t g = std::gcd((std::uint64_t)ib, q);
    const __int128 big_q = (__int128)q * ((std::uint64_t)ib / g);
    if (big_q > INT64_MAX) raise(Errc::Overflow, "intercept denominator too large");
    const std::uint64_t Q = (std::uint64_t)big_q;
    const std::uint64_t P = p * (Q / q);
    std::int64_t r0 = (std::int64_t)((__int128)intercept.num() * (std::int64_t)(Q / (std::uint64_t)ib) % (std::int64_t)Q);
    if (r0 < 0) r0 += (std::int64_t)Q;

    std::vector<Symbol> data(length);
    std::uint64_t r = (std::uint64_t)r0;
    const std::uint64_t threshold = Q - P;  // {x} >= 1 - alpha
    for (std::size_t n = 0; n < length; ++n) {
        r += P;
        if (r >= Q) r -= Q;
        data[n] = (r >= threshold) ? 1 : 0;
    }

    ordered_json prov;
    prov["kind"] = "sturmian";
    prov["quotients"] = quotients;
    prov["repeat_quotients"] = repeat_quotients;
    prov["intercept"] = intercept.str();
    prov["length"] = length;
    prov["convergent"] = std::to_string(cv.p) + "/" + std::to_string(cv.q);
    return SymbolSequence({'a', 'b'}, std::move(data), prov.dump());
}

// ---------------------------------------------------------------------------
// interval exchange coding

SymbolSequence generate_iet_coding(const std::vector<Rat>& lengths,
                                   const std::vector<int>& permutation,
                                   Rat start, std::size_t length) {
    const std::size_t d = lengths.size();
    if (d < 2) raise(Errc::BadArgument, "need d >= 2 intervals");
    if (d > 26) raise(Errc::AlphabetTooLarge, "at most 26 intervals supported");
    if (permutation.size() != d) raise(Errc::BadArgument, "permutation size mismatch");
    if (length == 0) raise(Errc::BadArgument, "length must be >= 1");

    std::vector<bool> seen(d + 1, false);
    for (int v : permutation) {
        if (v < 1 || v > (int)d || seen[v]) raise(Errc::BadArgument, "not a permutation of 1..d");
        seen[v] = true;
    }
    // Irreducible: no proper prefix {1..k} maps onto {1..k}.
    for (std::size_t k = 1; k + 1 <= d; ++k) {
        int maxv = 0;
        for (std::size_t i = 0; i < k; ++i) maxv = std::max(maxv, permutation[i]);
        if ((std::size_t)maxv == k)
            raise(Errc::ReduciblePermutation,
                  "permutation fixes {1.." + std::to_string(k) + "}");
    }

    Rat total(0);
    for (const Rat& len : lengths) {
        if (!(len > Rat(0))) raise(Errc::BadArgument, "interval lengths must be positive");
        total = total + len;
    }
    if (total != Rat(1)) raise(Errc::BadArgument, "interval lengths must sum to 1");
    if (start < Rat(0) || start >= Rat(1)) raise(Errc::BadArgument, "start must lie in [0,1)");

    // Common denominator for all interval endpoints and the start point.
    __int128 D128 = 1;
    auto lcm_in = [&](std::int64_t den) {
        std::int64_t g = std::gcd((std::int64_t)(D128 % den), den);
        if (g == 0) g = den;
        D128 *= den / g;
        if (D128 > (__int128)4 * 1000000000000000000LL)
            raise(Errc::Overflow, "common denominator too large");
    };
    for (const Rat& len : lengths) lcm_in(len.den());
    lcm_in(start.den());
    const std::int64_t D = (std::int64_t)D128;

    std::vector<std::int64_t> boundary(d + 1, 0);  // B_0..B_d on the D-grid
    for (std::size_t i = 0; i < d; ++i)
        boundary[i + 1] = boundary[i] + lengths[i].num() * (D / lengths[i].den());

    // Interval i lands after every interval j with pi(j) < pi(i).
    std::vector<std::int64_t> translation(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        std::int64_t new_left = 0;
        for (std::size_t j = 0; j < d; ++j)
            if (permutation[j] < permutation[i])
                new_left += boundary[j + 1] - boundary[j];
        translation[i] = new_left - boundary[i];
    }

    std::vector<Symbol> data(length);
    std::int64_t pos = start.num() * (D / start.den());
    for (std::size_t n = 0; n < length; ++n) {
        const std::size_t i =
            (std::size_t)(std::upper_bound(boundary.begin() + 1, boundary.end(), pos) -
                          (boundary.begin() + 1));
        data[n] = (Symbol)i;
        pos += translation[i];
    }

    if (length >= 8) {
        const std::size_t period = smallest_period(data.data(), length);
        if (period <= length / 4)
            raise(Errc::NonMinimalDetected,
                  "coding has period " + std::to_string(period) +
                      " <= length/4; parameters resolve to a periodic orbit");
    }

    std::vector<char> alphabet(d);
    for (std::size_t i = 0; i < d; ++i) alphabet[i] = (char)('a' + i);

    ordered_json prov;
    prov["kind"] = "iet";
    ordered_json jl = ordered_json::array();
    for (const Rat& len : lengths) jl.push_back(len.str());
    prov["lengths"] = jl;
    prov["permutation"] = permutation;
    prov["start"] = start.str();
    prov["length"] = length;
    return SymbolSequence(std::move(alphabet), std::move(data), prov.dump());
}

// ---------------------------------------------------------------------------
// files

SymbolSequence load_sequence(const std::string& path,
                             const std::optional<std::vector<char>>& alphabet_hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.empty()) raise(Errc::EmptyFile, path + " is empty");

    std::set<char> distinct(bytes.begin(), bytes.end());
    if (distinct.size() > 64) raise(Errc::AlphabetTooLarge, "more than 64 distinct byte values");

    std::vector<char> alphabet;
    if (alphabet_hint) {
        alphabet = *alphabet_hint;
        std::sort(alphabet.begin(), alphabet.end());
        for (char c : distinct)
            if (!std::binary_search(alphabet.begin(), alphabet.end(), c))
                raise(Errc::AlphabetMismatch,
                      std::string("byte '") + c + "' not in alphabet hint");
    } else {
        alphabet.assign(distinct.begin(), distinct.end());
    }

    std::vector<Symbol> data(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), bytes[i]);
        data[i] = (Symbol)(it - alphabet.begin());
    }

    ordered_json prov;
    prov["kind"] = "file";
    prov["path"] = path;
    return SymbolSequence(std::move(alphabet), std::move(data), prov.dump());
}

void save_sequence(const SymbolSequence& seq, const std::string& path) {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) raise(Errc::IoError, "cannot write " + path);
        const std::string text = seq.text();
        out.write(text.data(), (std::streamsize)text.size());
    }
    ordered_json meta;
    meta["schema_version"] = 1;
    meta["provenance"] = ordered_json::parse(seq.provenance());
    meta["length"] = seq.length();
    std::string a;
    for (char c : seq.alphabet()) a.push_back(c);
    meta["alphabet"] = a;
    std::ofstream mout(path + ".meta.json");
    if (!mout) raise(Errc::IoError, "cannot write " + path + ".meta.json");
    mout << meta.dump(2) << "\n";
}

std::size_t smallest_period(const std::uint8_t* data, std::size_t len) {
    if (len == 0) return 0;
    std::vector<std::uint32_t> border(len, 0);
    for (std::size_t i = 1; i < len; ++i) {
        std::uint32_t b = border[i - 1];
        while (b > 0 && data[i] != data[b]) b = border[b - 1];
        if (data[i] == data[b]) ++b;
        border[i] = b;
    }
    return len - border[len - 1];
}

} // namespace shiftlab
