// SPDX-License-Identifier: Apache-2.0
#include "pfq/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace pfq {

namespace {

// Scalar adapters so the summation core runs unchanged over double-double
// and binary64 complex numbers.
inline ComplexDD to_scalar(const ComplexDD &z, ComplexDD *) { return z; }
inline std::complex<double> to_scalar(const ComplexDD &z, std::complex<double> *) {
    return {z.re().hi() + z.re().lo(), z.im().hi() + z.im().lo()};
}

inline double mag(const ComplexDD &z) { return abs_d(z); }
inline double mag(const std::complex<double> &z) { return std::abs(z); }

inline ComplexDD add_index(const ComplexDD &z, int i) { return z + ComplexDD(double(i)); }
inline std::complex<double> add_index(const std::complex<double> &z, int i) {
    return z + double(i);
}

inline ComplexDD back_to_cdd(const ComplexDD &z) { return z; }
inline ComplexDD back_to_cdd(const std::complex<double> &z) { return {z.real(), z.imag()}; }

inline bool finite_scalar(const ComplexDD &z) { return z.is_finite(); }
inline bool finite_scalar(const std::complex<double> &z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// threshold_floor seeds the quiet-rule scale: 1 for the plain series (the
// leading term is 1), |prefactor| for scaled sums whose terms start tiny and
// rise to a peak before decaying; the floor then tracks the running peak so
// the rising phase is never mistaken for convergence.
template <class C>
EvalResult sum_series(const HyperSpec &spec, const TruncationPolicy &policy,
                      std::optional<int> degree, const ComplexDD &leading_term,
                      double threshold_floor) {
    C *tag = nullptr;
    std::vector<C> nums, dens;
    nums.reserve(spec.numerator.size());
    dens.reserve(spec.denominator.size());
    for (const auto &a : spec.numerator)
        nums.push_back(to_scalar(a, tag));
    for (const auto &b : spec.denominator)
        dens.push_back(to_scalar(b, tag));
    C x = to_scalar(spec.argument, tag);

    CompensatedAccumulator<C> acc;
    C term = to_scalar(leading_term, tag);
    acc.add(term);

    EvalResult out;
    if (mag(x) == 0.0) {
        out.value = back_to_cdd(acc.value());
        out.terms_used = 1;
        out.truncation_order = 0;
        out.terminated_exactly = true;
        return out;
    }

    if (degree) {
        // polynomial case: sum every term, no early stop
        for (int i = 0; i < *degree; ++i) {
            C num = x;
            for (const C &a : nums)
                num *= add_index(a, i);
            C den = C(double(i + 1));
            for (const C &b : dens)
                den *= add_index(b, i);
            term = term * num / den;
            acc.add(term);
        }
        out.value = back_to_cdd(acc.value());
        if (!out.value.is_finite())
            throw OverflowError("eval_series: series value is not representable");
        out.terms_used = *degree + 1;
        out.truncation_order = *degree;
        out.terminated_exactly = true;
        out.abs_error_estimate = mag(acc.value()) * double(*degree + 1) * kDDEpsilon;
        return out;
    }

    int quiet = 0;
    double last_abs[8] = {0};
    double peak = threshold_floor;
    int history = std::min(policy.quiet_shells, 8);
    for (int i = 0; i < policy.max_order; ++i) {
        C num = x;
        for (const C &a : nums)
            num *= add_index(a, i);
        C den = C(double(i + 1));
        for (const C &b : dens)
            den *= add_index(b, i);
        term = term * num / den;
        acc.add(term);
        double t_abs = mag(term);
        peak = std::max(peak, t_abs);
        for (int k = history - 1; k > 0; --k)
            last_abs[k] = last_abs[k - 1];
        last_abs[0] = t_abs;
        if (t_abs < policy.tol * std::max(peak, mag(acc.value())))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= policy.quiet_shells) {
            out.value = back_to_cdd(acc.value());
            if (!out.value.is_finite())
                throw OverflowError("eval_series: series value is not representable");
            double est = 2.0 * last_abs[0];
            for (int k = 0; k < history; ++k)
                est += last_abs[k];
            out.abs_error_estimate = est;
            out.terms_used = i + 2; // i+1 recurrence terms plus the leading 1
            out.truncation_order = i + 1;
            return out;
        }
    }
    throw ConvergenceError("eval_series: max_order " + std::to_string(policy.max_order) +
                           " reached with terms still above threshold");
}

void check_policy(const TruncationPolicy &policy) {
    if (!(policy.tol > 0.0) || policy.max_order < 1 || policy.quiet_shells < 1)
        throw DomainError("eval_series: invalid truncation policy");
}

void check_domain(const HyperSpec &spec) {
    validate(spec);
    ConvergenceClass cls = classify(spec);
    if (cls == ConvergenceClass::divergent)
        throw DomainError("eval_series: series is divergent (p > q+1 and not terminating)");
    if (cls == ConvergenceClass::unit_disk && !(abs_d(spec.argument) < 1.0))
        throw DomainError("eval_series: |argument| >= 1 outside the unit disk of convergence "
                          "for p = q+1");
}

} // namespace

void validate(const HyperSpec &spec) {
    for (const auto &b : spec.denominator) {
        int which = 0;
        if (near_nonpositive_integer(b, kIntegerDetectionTol, &which))
            throw DomainError("denominator parameter within 1e-25 of nonpositive integer " +
                              std::to_string(which));
    }
}

std::optional<int> terminating_degree(const std::vector<ComplexDD> &numerators) {
    std::optional<int> degree;
    for (const auto &a : numerators) {
        int which = 0;
        if (near_nonpositive_integer(a, kIntegerDetectionTol, &which)) {
            int m = -which;
            if (!degree || m < *degree)
                degree = m;
        }
    }
    return degree;
}

ConvergenceClass classify(const HyperSpec &spec) {
    if (terminating_degree(spec.numerator))
        return ConvergenceClass::terminating;
    auto p = spec.numerator.size();
    auto q = spec.denominator.size();
    if (p <= q)
        return ConvergenceClass::entire;
    if (p == q + 1)
        return ConvergenceClass::unit_disk;
    return ConvergenceClass::divergent;
}

EvalResult eval_series(const HyperSpec &spec, const TruncationPolicy &policy) {
    check_policy(policy);
    check_domain(spec);
    return sum_series<ComplexDD>(spec, policy, terminating_degree(spec.numerator),
                                 ComplexDD(1.0), 1.0);
}

EvalResult eval_series_f64(const HyperSpec &spec, const TruncationPolicy &policy) {
    check_policy(policy);
    check_domain(spec);
    return sum_series<std::complex<double>>(spec, policy,
                                            terminating_degree(spec.numerator),
                                            ComplexDD(1.0), 1.0);
}

EvalResult eval_series_scaled(const HyperSpec &spec, const TruncationPolicy &policy,
                              const ComplexDD &log_prefactor) {
    check_policy(policy);
    check_domain(spec);
    // the prefactor is folded into the leading term, so the whole sum runs at
    // the scaled magnitude; pFp(x t) e^{-t} style products stay representable
    // even where the bare sum would overflow
    ComplexDD prefactor = exp(log_prefactor);
    if (abs_d(prefactor) == 0.0) {
        // underflowed scale: every term of the scaled sum is below the
        // representable floor
        EvalResult zero;
        zero.value = ComplexDD(0.0);
        zero.terms_used = 1;
        zero.terminated_exactly = false;
        return zero;
    }
    EvalResult r = sum_series<ComplexDD>(spec, policy, terminating_degree(spec.numerator),
                                         prefactor, abs_d(prefactor));
    if (!r.value.is_finite())
        throw OverflowError("eval_series_scaled: scaled value is not representable");
    return r;
}

} // namespace pfq
