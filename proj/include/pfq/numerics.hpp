// SPDX-License-Identifier: Apache-2.0
//
// Scalar foundation: Pochhammer symbols, the complex gamma function and
// compensated accumulation on top of the double-double scalars.
#pragma once

#include <complex>
#include <cstdint>

#include "pfq/complex_dd.hpp"
#include "pfq/errors.hpp"

namespace pfq {

/// Ascending factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
/// Computed by direct product; n is bounded by truncation orders in practice.
ComplexDD pochhammer(const ComplexDD &a, int n);

/// Gamma(z) for complex z, accurate to ~29 digits for |z| <= 50.
/// Stirling's series after a recurrence shift to Re(z) >= 30; reflection
/// formula for Re(z) < 1/2.  Throws PoleError at nonpositive integers.
ComplexDD gamma(const ComplexDD &z);

/// A logarithm of Gamma(z) for Re(z) >= 0.5.  May differ from the principal
/// branch by a multiple of 2 pi i; exp() of it is Gamma(z) regardless.
ComplexDD log_gamma_right(const ComplexDD &z);

namespace detail {

inline void neumaier_step(double term, double &primary, double &compensation) {
    double s = primary + term;
    if (std::fabs(primary) >= std::fabs(term))
        compensation += (primary - s) + term;
    else
        compensation += (term - s) + primary;
    primary = s;
}

inline void neumaier_step(DDouble term, DDouble &primary, DDouble &compensation) {
    DDouble s = primary + term;
    if (std::fabs(primary.hi()) >= std::fabs(term.hi()))
        compensation += (primary - s) + term;
    else
        compensation += (term - s) + primary;
    primary = s;
}

} // namespace detail

/// Compensated (Neumaier) accumulator over a complex scalar type.  The
/// compensation keeps the running sum good to a few ulps of the working
/// precision even across heavy cancellation.
template <class C>
class CompensatedAccumulator {
public:
    void add(const C &term) {
        auto pr = primary_.re();
        auto pi = primary_.im();
        auto cr = compensation_.re();
        auto ci = compensation_.im();
        detail::neumaier_step(term.re(), pr, cr);
        detail::neumaier_step(term.im(), pi, ci);
        primary_ = C(pr, pi);
        compensation_ = C(cr, ci);
        ++count_;
    }

    C value() const { return primary_ + compensation_; }
    const C &primary() const { return primary_; }
    const C &compensation() const { return compensation_; }
    std::int64_t count() const { return count_; }

private:
    C primary_{};
    C compensation_{};
    std::int64_t count_ = 0;
};

// std::complex<double> uses value accessors, not re()/im(); adapt it.
template <>
class CompensatedAccumulator<std::complex<double>> {
public:
    void add(const std::complex<double> &term) {
        detail::neumaier_step(term.real(), pre_, cre_);
        detail::neumaier_step(term.imag(), pim_, cim_);
        ++count_;
    }
    std::complex<double> value() const { return {pre_ + cre_, pim_ + cim_}; }
    std::int64_t count() const { return count_; }

private:
    double pre_ = 0, pim_ = 0, cre_ = 0, cim_ = 0;
    std::int64_t count_ = 0;
};

/// Distance of z to the nearest nonpositive integer; returns that integer
/// through `which` when the distance is <= tol.
bool near_nonpositive_integer(const ComplexDD &z, double tol, int *which = nullptr);

} // namespace pfq
