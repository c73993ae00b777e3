// SPDX-License-Identifier: Apache-2.0
//
// Direct power-series evaluation of pFq: term recurrence, convergence
// classification, truncation-error estimation.
#pragma once

#include <optional>
#include <vector>

#include "pfq/numerics.hpp"

namespace pfq {

/// Absolute distance under which a parameter counts as a nonpositive integer.
inline constexpr double kIntegerDetectionTol = 1e-25;

struct TruncationPolicy {
    double tol = 1e-25;  ///< term threshold relative to the accumulated magnitude
    int max_order = 2000;
    int quiet_shells = 3; ///< consecutive below-threshold terms required to stop
};

inline TruncationPolicy default_policy() { return {}; }

enum class ConvergenceClass { entire, unit_disk, terminating, divergent };

struct HyperSpec {
    std::vector<ComplexDD> numerator;
    std::vector<ComplexDD> denominator;
    ComplexDD argument{0.0};
};

struct EvalResult {
    ComplexDD value{0.0};
    double abs_error_estimate = 0.0;
    std::int64_t terms_used = 0;
    int truncation_order = 0;
    bool terminated_exactly = false;
};

/// Throws DomainError if any denominator parameter is (within tolerance) a
/// nonpositive integer.
void validate(const HyperSpec &spec);

/// Index of termination if some numerator is a nonpositive integer -m:
/// the series is a polynomial of degree min(m).
std::optional<int> terminating_degree(const std::vector<ComplexDD> &numerators);

ConvergenceClass classify(const HyperSpec &spec);

/// Sum the series of the defining expansion.  Terminating series are summed
/// exactly; otherwise stops after `quiet_shells` consecutive terms below
/// tol * max(1, |accumulated|) and reports the truncation estimate.
EvalResult eval_series(const HyperSpec &spec, const TruncationPolicy &policy = {});

/// exp(log_prefactor) * pFq with the product formed at working precision.
EvalResult eval_series_scaled(const HyperSpec &spec, const TruncationPolicy &policy,
                              const ComplexDD &log_prefactor);

/// Plain binary64 evaluation path (speed mode; same stopping rule).
EvalResult eval_series_f64(const HyperSpec &spec, const TruncationPolicy &policy = {});

} // namespace pfq
