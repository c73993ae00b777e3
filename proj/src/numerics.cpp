// SPDX-License-Identifier: Apache-2.0
#include "pfq/numerics.hpp"

#include <cmath>

namespace pfq {

namespace {

// Stirling series coefficients B_{2n}/(2n(2n-1)), n = 1..24, as double-double
// pairs.  Regenerate with mpmath: bernoulli(2n)/(2n*(2n-1)), split into a
// binary64 value and its remainder.
constexpr DDouble kStirlingCoeff[] = {
    {0x1.5555555555555p-4, 0x1.5555555555555p-58},
    {-0x1.6c16c16c16c17p-9, 0x1.f49f49f49f49fp-64},
    {0x1.a01a01a01a01ap-11, 0x1.a01a01a01a01ap-71},
    {-0x1.3813813813814p-11, 0x1.fb1fb1fb1fb20p-65},
    {0x1.b951e2b18ff23p-11, 0x1.5c3a9ce01b952p-65},
    {-0x1.f6ab0d9993c7dp-10, 0x1.f82553c999b0ep-64},
    {0x1.a41a41a41a41ap-8, 0x1.0690690690690p-62},
    {-0x1.e4286cb0f5398p-6, 0x1.1efcdab896745p-61},
    {0x1.6fe96381e0680p-3, -0x1.79e2405a71f88p-61},
    {-0x1.6476701181f3ap+0, 0x1.24246319da678p-56},
    {0x1.ace44322ce006p+3, -0x1.62c2b1bbcdd32p-51},
    {-0x1.39b2525cccc1bp+7, 0x1.52604768a30fcp-47},
    {0x1.12234e81b4e82p+11, -0x1.2c5f92c5f92c6p-43},
    {-0x1.1a198ae1c4ab8p+15, 0x1.4c012227b696ep-41},
    {0x1.51a2089a6e11ap+19, 0x1.c219ee4fdc447p-36},
    {-0x1.d1089b142d357p+23, -0x1.e2030b4d5de20p-31},
    {0x1.6d29a0f6433b8p+28, -0x1.9dbcc48676f31p-26},
    {-0x1.445119d9e466fp+33, 0x1.5159fdb2a3b69p-22},
    {0x1.43779bc9d4025p+38, -0x1.95e8efdb195e9p-18},
    {-0x1.6800b7bc07a8dp+43, 0x1.eaede53f475a8p-11},
    {0x1.bc8cd6f8f1f75p+48, 0x1.71e1d4f36d757p-6},
    {-0x1.2efaec50eee53p+54, -0x1.e5a0284fa7ec4p+0},
    {0x1.c5c266feb5e18p+59, -0x1.26f494f5cad2bp+4},
    {-0x1.73c1280b15b12p+65, -0x1.6b4f92ff986cep+6},
};

constexpr double kStirlingThreshold = 30.0;

// sin(pi z) for complex z: sin(pi a) cosh(pi b) + i cos(pi a) sinh(pi b).
ComplexDD sinpi_complex(const ComplexDD &z) {
    DDouble a = z.re();
    DDouble b = z.im();
    if (b == DDouble(0.0))
        return ComplexDD(sinpi(a));
    DDouble pb = kPi * b;
    return {sinpi(a) * cosh(pb), cospi(a) * sinh(pb)};
}

} // namespace

bool near_nonpositive_integer(const ComplexDD &z, double tol, int *which) {
    double k = round_to_int(z.re());
    if (k > 0.5)
        return false;
    DDouble dre = z.re() - k;
    double dist = std::hypot(dre.hi() + dre.lo(), z.im().hi() + z.im().lo());
    if (dist > tol)
        return false;
    if (which)
        *which = static_cast<int>(k);
    return true;
}

ComplexDD pochhammer(const ComplexDD &a, int n) {
    if (n < 0)
        throw DomainError("pochhammer: order must be nonnegative");
    ComplexDD result(1.0);
    ComplexDD factor = a;
    for (int j = 0; j < n; ++j) {
        result *= factor;
        factor += ComplexDD(1.0);
    }
    if (!result.is_finite())
        throw OverflowError("pochhammer: result magnitude is not representable");
    return result;
}

ComplexDD log_gamma_right(const ComplexDD &z) {
    // shift until Re >= threshold, then Stirling
    int m = 0;
    double re = z.re().hi();
    if (re < kStirlingThreshold)
        m = static_cast<int>(std::ceil(kStirlingThreshold - re));
    ComplexDD shift_product(1.0);
    ComplexDD w = z;
    for (int k = 0; k < m; ++k) {
        shift_product *= w;
        w += ComplexDD(1.0);
    }
    ComplexDD w_inv2 = ComplexDD(1.0) / (w * w);
    ComplexDD series(0.0);
    ComplexDD power = ComplexDD(1.0) / w;
    for (const DDouble &c : kStirlingCoeff) {
        series += power * c;
        power *= w_inv2;
    }
    ComplexDD lg = (w - ComplexDD(0.5)) * log(w) - w + ComplexDD(kHalfLn2Pi) + series;
    return lg - log(shift_product);
}

ComplexDD gamma(const ComplexDD &z) {
    if (near_nonpositive_integer(z, 1e-28))
        throw PoleError("gamma: pole at nonpositive integer");
    if (z.re().hi() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        ComplexDD s = sinpi_complex(z);
        return ComplexDD(kPi) / (s * gamma(ComplexDD(1.0) - z));
    }
    ComplexDD g = exp(log_gamma_right(z));
    if (!g.is_finite())
        throw OverflowError("gamma: result magnitude is not representable");
    return g;
}

} // namespace pfq
