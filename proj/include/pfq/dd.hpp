// SPDX-License-Identifier: Apache-2.0
//
// Double-double arithmetic: each value is an unevaluated sum hi + lo of two
// binary64 numbers with |lo| <= ulp(hi)/2, giving ~31-32 significant decimal
// digits at binary64 range.  Error-free transformations follow M. Joldes,
// J.-M. Muller, V. Popescu, ACM Trans. Math. Softw. 44 (2018), and the
// elementary functions use the argument-reduction + Taylor-kernel scheme of
// Bailey's QD library.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace pfq {

class DDouble {
public:
    constexpr DDouble() : hi_(0.0), lo_(0.0) {}
    constexpr DDouble(double x) : hi_(x), lo_(0.0) {}
    constexpr DDouble(int x) : hi_(x), lo_(0.0) {}
    constexpr DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }

    /// Nearest binary64 value.
    constexpr double to_double() const { return hi_; }

    bool is_finite() const { return std::isfinite(hi_) && std::isfinite(lo_); }

    /// a + b with the exact rounding error in the low word (6 flops).
    static DDouble two_sum(double a, double b) {
        double s = a + b;
        double ap = s - b;
        double bp = s - ap;
        return DDouble(s, (a - ap) + (b - bp));
    }

    /// Requires |a| >= |b| (3 flops).
    static DDouble fast_two_sum(double a, double b) {
        double s = a + b;
        return DDouble(s, b - (s - a));
    }

    /// a * b with the exact rounding error, via FMA.
    static DDouble two_prod(double a, double b) {
        double p = a * b;
        return DDouble(p, std::fma(a, b, -p));
    }

    friend DDouble operator-(DDouble a) { return DDouble(-a.hi_, -a.lo_); }

    friend DDouble operator+(DDouble a, DDouble b) {
        DDouble s = two_sum(a.hi_, b.hi_);
        DDouble t = two_sum(a.lo_, b.lo_);
        double c = s.lo_ + t.hi_;
        DDouble v = fast_two_sum(s.hi_, c);
        return fast_two_sum(v.hi_, t.lo_ + v.lo_);
    }
    friend DDouble operator+(DDouble a, double b) {
        DDouble s = two_sum(a.hi_, b);
        return fast_two_sum(s.hi_, a.lo_ + s.lo_);
    }
    friend DDouble operator+(double a, DDouble b) { return b + a; }

    friend DDouble operator-(DDouble a, DDouble b) { return a + (-b); }
    friend DDouble operator-(DDouble a, double b) { return a + (-b); }
    friend DDouble operator-(double a, DDouble b) { return (-b) + a; }

    friend DDouble operator*(DDouble a, DDouble b) {
        DDouble p = two_prod(a.hi_, b.hi_);
        double t = a.lo_ * b.lo_;
        t = std::fma(a.hi_, b.lo_, t);
        t = std::fma(a.lo_, b.hi_, t);
        return fast_two_sum(p.hi_, p.lo_ + t);
    }
    friend DDouble operator*(DDouble a, double b) {
        DDouble p = two_prod(a.hi_, b);
        return fast_two_sum(p.hi_, std::fma(a.lo_, b, p.lo_));
    }
    friend DDouble operator*(double a, DDouble b) { return b * a; }

    // Long division with three partial quotients (accurate to ~4 eps^2).
    friend DDouble operator/(DDouble a, DDouble b) {
        double q1 = a.hi_ / b.hi_;
        DDouble r = a - b * q1;
        double q2 = r.hi_ / b.hi_;
        r = r - b * q2;
        double q3 = r.hi_ / b.hi_;
        return fast_two_sum(q1, q2) + q3;
    }
    friend DDouble operator/(DDouble a, double b) { return a / DDouble(b); }
    friend DDouble operator/(double a, DDouble b) { return DDouble(a) / b; }

    DDouble &operator+=(DDouble y) { return *this = *this + y; }
    DDouble &operator-=(DDouble y) { return *this = *this - y; }
    DDouble &operator*=(DDouble y) { return *this = *this * y; }
    DDouble &operator/=(DDouble y) { return *this = *this / y; }

    friend bool operator==(DDouble a, DDouble b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
    friend bool operator!=(DDouble a, DDouble b) { return !(a == b); }
    friend bool operator<(DDouble a, DDouble b) {
        return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
    }
    friend bool operator>(DDouble a, DDouble b) { return b < a; }
    friend bool operator<=(DDouble a, DDouble b) { return !(b < a); }
    friend bool operator>=(DDouble a, DDouble b) { return !(a < b); }

private:
    double hi_;
    double lo_;
};

inline DDouble abs(DDouble a) { return a.hi() < 0.0 || (a.hi() == 0.0 && a.lo() < 0.0) ? -a : a; }
inline DDouble ldexp(DDouble a, int n) {
    return DDouble(std::ldexp(a.hi(), n), std::ldexp(a.lo(), n));
}

/// Nearest integer (|a| < 2^52 assumed, which covers every use here).
inline double round_to_int(DDouble a) {
    double r = std::nearbyint(a.hi());
    // hi exactly on a .5 tie: the low word decides
    if (std::fabs(a.hi() - r) == 0.5)
        r = std::nearbyint(a.hi() + a.lo());
    return r;
}

DDouble sqrt(DDouble a);
DDouble exp(DDouble a);
DDouble log(DDouble a);

/// sin(pi x), cos(pi x) with exact integer reduction of x.
DDouble sinpi(DDouble x);
DDouble cospi(DDouble x);

DDouble sin(DDouble a);
DDouble cos(DDouble a);
DDouble sinh(DDouble a);
DDouble cosh(DDouble a);
DDouble atan2(DDouble y, DDouble x);

DDouble pow_int(DDouble a, int n);

// --- constants (hi/lo pairs split from 60-digit decimal values) ---
inline constexpr DDouble kPi{0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53};
inline constexpr DDouble kTwoPi{0x1.921fb54442d18p+2, 0x1.1a62633145c07p-52};
inline constexpr DDouble kHalfPi{0x1.921fb54442d18p+0, 0x1.1a62633145c07p-54};
inline constexpr DDouble kLn2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
inline constexpr DDouble kLn10{0x1.26bb1bbb55516p+1, -0x1.f48ad494ea3e9p-53};
inline constexpr DDouble kHalfLn2Pi{0x1.d67f1c864beb5p-1, -0x1.65b5a1b7ff5dfp-55};

// 2^-104; relative error floor of compound double-double operations
inline constexpr double kDDEpsilon = 4.93038065763132e-32;

} // namespace pfq
