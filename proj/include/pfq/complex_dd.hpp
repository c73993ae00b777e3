// SPDX-License-Identifier: Apache-2.0
//
// Complex numbers over the double-double reals.  This is the scalar type of
// the whole library: parameters, arguments and series terms all live here.
#pragma once

#include "pfq/dd.hpp"

namespace pfq {

class ComplexDD {
public:
    constexpr ComplexDD() = default;
    constexpr ComplexDD(DDouble re) : re_(re), im_(0.0) {}
    constexpr ComplexDD(double re) : re_(re), im_(0.0) {}
    constexpr ComplexDD(int re) : re_(re), im_(0.0) {}
    constexpr ComplexDD(DDouble re, DDouble im) : re_(re), im_(im) {}
    constexpr ComplexDD(double re, double im) : re_(re), im_(im) {}

    constexpr const DDouble &re() const { return re_; }
    constexpr const DDouble &im() const { return im_; }

    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
    bool is_zero() const { return re_ == DDouble(0.0) && im_ == DDouble(0.0); }

    friend ComplexDD operator-(const ComplexDD &a) { return {-a.re_, -a.im_}; }

    friend ComplexDD operator+(const ComplexDD &a, const ComplexDD &b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend ComplexDD operator-(const ComplexDD &a, const ComplexDD &b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend ComplexDD operator*(const ComplexDD &a, const ComplexDD &b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend ComplexDD operator*(const ComplexDD &a, double b) {
        return {a.re_ * b, a.im_ * b};
    }
    friend ComplexDD operator*(double a, const ComplexDD &b) { return b * a; }
    friend ComplexDD operator*(const ComplexDD &a, DDouble b) {
        return {a.re_ * b, a.im_ * b};
    }

    // Smith's scheme keeps intermediates in range.
    friend ComplexDD operator/(const ComplexDD &a, const ComplexDD &b) {
        if (std::fabs(b.re_.hi()) >= std::fabs(b.im_.hi())) {
            DDouble r = b.im_ / b.re_;
            DDouble den = b.re_ + b.im_ * r;
            return {(a.re_ + a.im_ * r) / den, (a.im_ - a.re_ * r) / den};
        }
        DDouble r = b.re_ / b.im_;
        DDouble den = b.im_ + b.re_ * r;
        return {(a.re_ * r + a.im_) / den, (a.im_ * r - a.re_) / den};
    }
    friend ComplexDD operator/(const ComplexDD &a, double b) {
        return {a.re_ / b, a.im_ / b};
    }
    friend ComplexDD operator/(const ComplexDD &a, DDouble b) {
        return {a.re_ / b, a.im_ / b};
    }

    ComplexDD &operator+=(const ComplexDD &y) { return *this = *this + y; }
    ComplexDD &operator-=(const ComplexDD &y) { return *this = *this - y; }
    ComplexDD &operator*=(const ComplexDD &y) { return *this = *this * y; }
    ComplexDD &operator/=(const ComplexDD &y) { return *this = *this / y; }

    friend bool operator==(const ComplexDD &a, const ComplexDD &b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ComplexDD &a, const ComplexDD &b) { return !(a == b); }

private:
    DDouble re_{0.0};
    DDouble im_{0.0};
};

inline ComplexDD conj(const ComplexDD &z) { return {z.re(), -z.im()}; }

inline DDouble abs(const ComplexDD &z) {
    if (z.im() == DDouble(0.0))
        return abs(z.re());
    if (z.re() == DDouble(0.0))
        return abs(z.im());
    // scale by the larger component to avoid spurious over/underflow
    DDouble ar = abs(z.re());
    DDouble ai = abs(z.im());
    if (ar.hi() >= ai.hi()) {
        DDouble q = ai / ar;
        return ar * sqrt(DDouble(1.0) + q * q);
    }
    DDouble q = ar / ai;
    return ai * sqrt(DDouble(1.0) + q * q);
}

/// |z| as binary64; cheap path for magnitude tests.
inline double abs_d(const ComplexDD &z) {
    return std::hypot(z.re().hi(), z.im().hi());
}

inline DDouble arg(const ComplexDD &z) { return atan2(z.im(), z.re()); }

inline ComplexDD exp(const ComplexDD &z) {
    DDouble m = exp(z.re());
    DDouble t = z.im() / kPi;
    return {m * cospi(t), m * sinpi(t)};
}

inline ComplexDD log(const ComplexDD &z) { return {log(abs(z)), arg(z)}; }

/// Principal-branch power base^e = exp(e log base).
inline ComplexDD pow(const ComplexDD &base, const ComplexDD &e) {
    return exp(e * log(base));
}

inline ComplexDD pow_int(const ComplexDD &a, int n) {
    if (n == 0)
        return ComplexDD(1.0);
    bool invert = n < 0;
    unsigned m = invert ? static_cast<unsigned>(-(long long)n) : static_cast<unsigned>(n);
    ComplexDD base = a;
    ComplexDD result(1.0);
    while (m) {
        if (m & 1)
            result *= base;
        base *= base;
        m >>= 1;
    }
    return invert ? ComplexDD(1.0) / result : result;
}

} // namespace pfq
