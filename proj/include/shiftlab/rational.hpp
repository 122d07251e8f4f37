#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "shiftlab/common.hpp"

namespace shiftlab {

/*
 * Exact rational on int64 with __int128 intermediates. All counter and
 * density comparisons in this project are exact; there is no epsilon
 * anywhere. Numerators/denominators stay small by construction (counts
 * bounded by the corpus length), so overflow is a hard error, not a
 * rounding event.
 */
class Rat {
public:
    constexpr Rat() = default;
    Rat(std::int64_t num) : num_(num), den_(1) {}
    Rat(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) raise(Errc::BadArgument, "rational division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    double approx() const { return (double)num_ / (double)den_; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Rat from128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            raise(Errc::Overflow, "rational out of int64 range");
        Rat r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) raise(Errc::BadArgument, "zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace shiftlab
