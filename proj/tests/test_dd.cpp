// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfq/complex_dd.hpp"
#include "pfq/sweep.hpp"

using namespace pfq;

namespace {

// reference values computed with mpmath at 50 digits
struct Ref {
    double hi, lo;
};

double rel_err(DDouble got, Ref want) {
    DDouble w(want.hi, want.lo);
    DDouble d = got - w;
    double denom = std::fabs(w.hi()) > 0 ? std::fabs(w.hi()) : 1.0;
    return std::fabs(d.hi()) / denom;
}

} // namespace

TEST_CASE("error-free transformations are exact") {
    DDouble s = DDouble(1e16) + DDouble(1.0);
    CHECK(s.hi() == 1e16);
    CHECK(s.lo() == 1.0);
    s = s - DDouble(1e16);
    CHECK(s.hi() == 1.0);
    CHECK(s.lo() == 0.0);

    DDouble p = DDouble::two_prod(1.0 + 0x1p-30, 1.0 + 0x1p-30);
    CHECK(p.lo() == 0x1p-60); // (1+2^-30)^2 = 1 + 2^-29 + 2^-60 exactly
}

TEST_CASE("basic arithmetic reaches 30 digits") {
    // (1/3) * 3 = 1
    DDouble third = DDouble(1.0) / DDouble(3.0);
    DDouble one = third * DDouble(3.0);
    CHECK(std::fabs((one - DDouble(1.0)).hi()) < 1e-31);

    // pi * pi / pi = pi
    DDouble p = kPi * kPi / kPi;
    CHECK(std::fabs((p - kPi).hi()) < 1e-31);
}

TEST_CASE("sqrt") {
    CHECK(rel_err(sqrt(DDouble(2.0)),
                  {1.4142135623730951, -9.667293313452913e-17}) < 1e-31);
    CHECK(sqrt(DDouble(0.0)) == DDouble(0.0));
    DDouble r = sqrt(kPi);
    // sqrt(pi) = 1.7724538509055160272981674833411
    CHECK(rel_err(r, {1.772453850905516, -7.666586499825799e-17}) < 1e-31);
}

TEST_CASE("exp and log") {
    CHECK(rel_err(exp(DDouble(0.0)), {1.0, 0.0}) == 0.0);
    // exp(1.234) = 3.4349418608007599682503428957595
    CHECK(rel_err(exp(DDouble(1.234)), {3.43494186080076, 1.1416461895439605e-16}) < 3e-31);
    // log(3.7) = 1.3083328196501787603501042163471
    CHECK(rel_err(log(DDouble(3.7)), {1.308332819650179, -8.256475934401426e-17}) < 3e-31);

    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        double v = rng.uniform(-600.0, 600.0);
        DDouble x(v);
        DDouble back = log(exp(x));
        CHECK(std::fabs((back - x).hi()) <= 2e-29 * std::max(1.0, std::fabs(v)));
    }
}

TEST_CASE("sinpi cospi") {
    // sin(pi * 0.3) = 0.80901699437494742410229341718282
    CHECK(rel_err(sinpi(DDouble(0.3)), {0.8090169943749475, -4.766175266906226e-17}) < 3e-31);
    CHECK(sinpi(DDouble(1.0)) == DDouble(0.0));
    CHECK(cospi(DDouble(0.5)) == DDouble(0.0));
    CHECK(sinpi(DDouble(0.5)) == DDouble(1.0));
    CHECK(cospi(DDouble(1.0)) == DDouble(-1.0));

    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        DDouble x(rng.uniform(-20.0, 20.0));
        DDouble s = sinpi(x), c = cospi(x);
        DDouble unit = s * s + c * c;
        CHECK(std::fabs((unit - DDouble(1.0)).hi()) < 1e-30);
    }
}

TEST_CASE("atan2") {
    // atan2(0.7, -0.3) = 1.9756881130799800425433946206492
    CHECK(rel_err(atan2(DDouble(0.7), DDouble(-0.3)),
                  {1.9756881130799802, -1.0502421050460647e-16}) < 3e-31);
    CHECK(atan2(DDouble(0.0), DDouble(1.0)) == DDouble(0.0));
    SplitMix64 rng(13);
    for (int i = 0; i < 100; ++i) {
        DDouble y(rng.uniform(-3.0, 3.0));
        DDouble x(rng.uniform(-3.0, 3.0));
        DDouble t = atan2(y, x);
        // tan(t) = y/x up to the working precision
        DDouble lhs = sin(t) * x;
        DDouble rhs = cos(t) * y;
        CHECK(std::fabs((lhs - rhs).hi()) < 1e-29 * std::max(1.0, std::fabs(y.hi())));
    }
}

TEST_CASE("30-digit arithmetic across wide magnitudes") {
    SplitMix64 rng(17);
    for (int i = 0; i < 300; ++i) {
        DDouble a = ldexp(DDouble(1.0 + rng.uniform()),
                          int(rng.uniform(-330.0, 330.0))); // ~1e-100 .. 1e100
        DDouble b = ldexp(DDouble(1.0 + rng.uniform()), int(rng.uniform(-330.0, 330.0)));
        if (rng.uniform() < 0.5)
            a = -a;
        DDouble back = (a * b) / b;
        CHECK(std::fabs((back - a).hi()) <= 1e-30 * std::fabs(a.hi()));
        DDouble root = sqrt(abs(a));
        CHECK(std::fabs((root * root - abs(a)).hi()) <= 1e-30 * std::fabs(a.hi()));
    }
}

TEST_CASE("complex arithmetic") {
    ComplexDD a(1.5, -0.5), b(0.25, 2.0);
    ComplexDD q = (a * b) / b;
    CHECK(std::fabs((q - a).re().hi()) < 1e-30);
    CHECK(std::fabs((q - a).im().hi()) < 1e-30);

    ComplexDD l = log(exp(ComplexDD(0.3, 1.1)));
    CHECK(std::fabs((l.re() - DDouble(0.3)).hi()) < 1e-30);
    CHECK(std::fabs((l.im() - DDouble(1.1)).hi()) < 1e-30);

    // principal branch: (1-x)^(-a) at x=0.35, a=0.8:
    // 1.4114624040161508966406620740354
    ComplexDD p = pow(ComplexDD(0.65), ComplexDD(-0.8));
    CHECK(rel_err(p.re(), {1.411462404016151, -8.819316444728453e-17}) < 3e-31);
    CHECK(std::fabs(p.im().hi()) < 1e-31);
}
