#pragma once

// Exact arithmetic on Q united with +infinity, under the conventions the
// order formulas rely on: 1/inf = 0, and the Lebesgue conjugate swaps 1
// and inf.  The exponents appearing here are tiny fractions, so an int64
// rational (with 128-bit intermediates) is ample.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fiolab {

// Normalized rational over int64. Denominator is always positive.
struct Rat64 {
    long long num = 0;
    long long den = 1;

    Rat64() = default;
    Rat64(long long n) : num(n) {}
    Rat64(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat64: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static Rat64 from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rat64: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        constexpr __int128 lim = std::numeric_limits<long long>::max();
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("Rat64: value out of 64-bit range");
        Rat64 r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    friend Rat64 operator+(const Rat64& a, const Rat64& b) {
        return from128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
    }
    friend Rat64 operator-(const Rat64& a, const Rat64& b) {
        return from128(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
    }
    friend Rat64 operator-(const Rat64& a) { return Rat64(-a.num, a.den); }
    friend Rat64 operator*(const Rat64& a, const Rat64& b) {
        return from128(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    }
    friend Rat64 operator/(const Rat64& a, const Rat64& b) {
        if (b.num == 0) throw std::domain_error("Rat64: division by zero");
        return from128(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
    }
    friend bool operator==(const Rat64& a, const Rat64& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rat64& a, const Rat64& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

class ExtReal {
  public:
    ExtReal() = default;
    ExtReal(long long v) : value_(v) {}
    ExtReal(long long num, long long den) : value_(num, den) {}
    explicit ExtReal(Rat64 v) : value_(v) {}

    static ExtReal infinity() {
        ExtReal r;
        r.infinite_ = true;
        return r;
    }

    // Parse "inf", "a/b", or a plain integer / decimal string.
    static ExtReal parse(const std::string& s) {
        if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return infinity();
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            return ExtReal(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        }
        const auto point = s.find('.');
        if (point != std::string::npos) {
            const std::string digits = s.substr(0, point) + s.substr(point + 1);
            long long den = 1;
            for (std::size_t i = point + 1; i < s.size(); ++i) den *= 10;
            return ExtReal(std::stoll(digits), den);
        }
        return ExtReal(std::stoll(s));
    }

    bool is_infinite() const { return infinite_; }
    const Rat64& rational() const {
        if (infinite_) throw std::domain_error("ExtReal: infinite value has no rational form");
        return value_;
    }

    double to_double() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
    }

    std::string str() const {
        if (infinite_) return "inf";
        if (value_.den == 1) return std::to_string(value_.num);
        return std::to_string(value_.num) + "/" + std::to_string(value_.den);
    }

    // 1/x with 1/inf = 0; reciprocal of 0 is inf.
    ExtReal reciprocal() const {
        if (infinite_) return ExtReal(0);
        if (value_.num == 0) return infinity();
        return ExtReal(Rat64(value_.den, value_.num));
    }

    // Lebesgue conjugate: 1/x + 1/x' = 1; conj(1) = inf, conj(inf) = 1.
    ExtReal conjugate() const {
        if (infinite_) return ExtReal(1);
        if (value_ == Rat64(1)) return infinity();
        if (value_ < Rat64(1)) throw std::domain_error("ExtReal: conjugate needs x >= 1");
        return ExtReal(value_ / (value_ - Rat64(1)));
    }

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtReal(a.value_ + b.value_);
    }
    friend ExtReal operator-(const ExtReal& a, const ExtReal& b) {
        if (b.infinite_) {
            if (a.infinite_) throw std::domain_error("ExtReal: inf - inf");
            throw std::domain_error("ExtReal: negative infinity is not represented");
        }
        if (a.infinite_) return infinity();
        return ExtReal(a.value_ - b.value_);
    }
    friend ExtReal operator-(const ExtReal& a) {
        if (a.infinite_) throw std::domain_error("ExtReal: negative infinity is not represented");
        return ExtReal(-a.value_);
    }
    friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) {
            const ExtReal& fin = a.infinite_ ? b : a;
            if (!fin.infinite_ && !(Rat64(0) < fin.value_))
                throw std::domain_error("ExtReal: inf times nonpositive");
            return infinity();
        }
        return ExtReal(a.value_ * b.value_);
    }
    friend ExtReal operator/(const ExtReal& a, const ExtReal& b) { return a * b.reciprocal(); }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
    friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) { return b <= a; }

  private:
    Rat64 value_{0};
    bool infinite_ = false;
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a >= b ? a : b; }

// Exponent triple bound by the Hoelder relation 1/r = 1/p + 1/q.
struct ExponentTriple {
    ExtReal p, q, r;

    static ExponentTriple from_pq(const ExtReal& p, const ExtReal& q) {
        return ExponentTriple{p, q, (p.reciprocal() + q.reciprocal()).reciprocal()};
    }
    bool holder_holds() const { return r.reciprocal() == p.reciprocal() + q.reciprocal(); }
};

}  // namespace fiolab
