// SPDX-License-Identifier: Apache-2.0
#include "pfq/dd.hpp"

namespace pfq {

namespace {

// exp(a) - 1 by Taylor series; |a| must be small (<= ln2/1024 after reduction).
DDouble expm1_kernel(DDouble a) {
    DDouble term = a;
    DDouble sum = a;
    for (int k = 2; k < 32; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
        if (std::fabs(term.hi()) < 1e-37 * (std::fabs(sum.hi()) + 1e-300))
            break;
    }
    return sum;
}

// sin kernel on |g| <= pi/4.
DDouble sin_kernel(DDouble g) {
    DDouble g2 = g * g;
    DDouble term = g;
    DDouble sum = g;
    for (int k = 1; k < 24; ++k) {
        term = term * g2 / static_cast<double>((2 * k) * (2 * k + 1));
        sum = (k & 1) ? sum - term : sum + term;
        if (std::fabs(term.hi()) < 1e-35 * (std::fabs(sum.hi()) + 1e-300))
            break;
    }
    return sum;
}

// cos kernel on |g| <= pi/4.
DDouble cos_kernel(DDouble g) {
    DDouble g2 = g * g;
    DDouble term(1.0);
    DDouble sum(1.0);
    for (int k = 1; k < 24; ++k) {
        term = term * g2 / static_cast<double>((2 * k - 1) * (2 * k));
        sum = (k & 1) ? sum - term : sum + term;
        if (std::fabs(term.hi()) < 1e-35)
            break;
    }
    return sum;
}

// sin(pi f) for |f| <= 1/2, quadrant-reduced onto the kernels.
DDouble sinpi_reduced(DDouble f) {
    DDouble af = abs(f);
    DDouble s = (af.hi() <= 0.25) ? sin_kernel(kPi * af)
                                  : cos_kernel(kPi * (DDouble(0.5) - af));
    return f.hi() < 0.0 || (f.hi() == 0.0 && f.lo() < 0.0) ? -s : s;
}

DDouble cospi_reduced(DDouble f) {
    DDouble af = abs(f);
    return (af.hi() <= 0.25) ? cos_kernel(kPi * af)
                             : sin_kernel(kPi * (DDouble(0.5) - af));
}

} // namespace

DDouble sqrt(DDouble a) {
    if (a.hi() == 0.0)
        return DDouble(0.0);
    if (a.hi() < 0.0)
        return DDouble(std::numeric_limits<double>::quiet_NaN());
    double y = std::sqrt(a.hi());
    // one Newton step doubles the seed's 53 bits
    DDouble r = DDouble(y) + (a - DDouble::two_prod(y, y)) / (2.0 * y);
    r = 0.5 * (r + a / r);
    return r;
}

DDouble exp(DDouble a) {
    if (a.hi() > 709.0)
        return DDouble(std::numeric_limits<double>::infinity());
    if (a.hi() < -746.0)
        return DDouble(0.0);
    double m = std::nearbyint(a.hi() / kLn2.hi());
    DDouble r = a - kLn2 * m;
    r = ldexp(r, -9); // |r| <= ln2/1024
    DDouble t = expm1_kernel(r);
    for (int i = 0; i < 9; ++i)
        t = t * 2.0 + t * t; // e^{2r}-1 = (e^r-1)^2 + 2(e^r-1)
    return ldexp(t + 1.0, static_cast<int>(m));
}

DDouble log(DDouble a) {
    if (a.hi() <= 0.0)
        return DDouble(std::numeric_limits<double>::quiet_NaN());
    DDouble x(std::log(a.hi()));
    // Newton on exp(x) = a; two steps from the 16-digit seed
    x = x + a * exp(-x) - 1.0;
    x = x + a * exp(-x) - 1.0;
    return x;
}

DDouble sinpi(DDouble x) {
    double n = round_to_int(x);
    DDouble f = x - n; // exact; |f| <= 1/2
    DDouble s = sinpi_reduced(f);
    return (static_cast<std::int64_t>(n) & 1) ? -s : s;
}

DDouble cospi(DDouble x) {
    double n = round_to_int(x);
    DDouble f = x - n;
    DDouble c = cospi_reduced(f);
    return (static_cast<std::int64_t>(n) & 1) ? -c : c;
}

DDouble sin(DDouble a) { return sinpi(a / kPi); }
DDouble cos(DDouble a) { return cospi(a / kPi); }

DDouble sinh(DDouble a) {
    if (std::fabs(a.hi()) < 0.5) {
        // Taylor; avoids the cancellation in (e^a - e^-a)/2
        DDouble a2 = a * a;
        DDouble term = a;
        DDouble sum = a;
        for (int k = 1; k < 16; ++k) {
            term = term * a2 / static_cast<double>((2 * k) * (2 * k + 1));
            sum += term;
            if (std::fabs(term.hi()) < 1e-35 * (std::fabs(sum.hi()) + 1e-300))
                break;
        }
        return sum;
    }
    DDouble e = exp(a);
    return ldexp(e - 1.0 / e, -1);
}

DDouble cosh(DDouble a) {
    DDouble e = exp(a);
    return ldexp(e + 1.0 / e, -1);
}

DDouble atan2(DDouble y, DDouble x) {
    if (y.hi() == 0.0 && y.lo() == 0.0)
        return x.hi() >= 0.0 ? DDouble(0.0) : kPi;
    if (x.hi() == 0.0 && x.lo() == 0.0)
        return y.hi() > 0.0 ? kHalfPi : -kHalfPi;
    DDouble r = sqrt(x * x + y * y);
    DDouble xn = x / r;
    DDouble yn = y / r;
    DDouble z(std::atan2(y.hi(), x.hi()));
    // Newton on sin(z) = yn (or cos(z) = xn near the poles of the first form)
    for (int i = 0; i < 2; ++i) {
        DDouble sz = sin(z);
        DDouble cz = cos(z);
        if (std::fabs(xn.hi()) > std::fabs(yn.hi()))
            z = z + (yn - sz) / cz;
        else
            z = z - (xn - cz) / sz;
    }
    return z;
}

DDouble pow_int(DDouble a, int n) {
    if (n == 0)
        return DDouble(1.0);
    bool invert = n < 0;
    unsigned m = invert ? static_cast<unsigned>(-(long long)n) : static_cast<unsigned>(n);
    DDouble base = a;
    DDouble result(1.0);
    while (m) {
        if (m & 1)
            result *= base;
        base *= base;
        m >>= 1;
    }
    return invert ? 1.0 / result : result;
}

} // namespace pfq
