// SPDX-License-Identifier: Apache-2.0
//
// Independent cross-validation of the series and identity evaluators via the
// two integral representations used in the proofs: the Beta-weighted Euler
// integral that lowers the order by one, and the exponentially weighted
// Laplace integral that raises pFp to p+1Fp.
#pragma once

#include "pfq/series.hpp"

namespace pfq {

enum class RuleKind { legendre_01, laguerre_0inf };

struct QuadratureNode {
    DDouble abscissa{0.0};
    DDouble weight{0.0};
    /// weight * e^{abscissa} for laguerre_0inf (stays representable where the
    /// plain weight underflows); equals weight for legendre_01.
    DDouble scaled_weight{0.0};
};

struct QuadratureRule {
    RuleKind kind = RuleKind::legendre_01;
    int order = 0;
    std::vector<QuadratureNode> nodes;
};

/// Nodes and weights by Newton iteration on the orthogonal-polynomial
/// recurrences at working precision; deterministic for fixed (kind, order).
QuadratureRule build_rule(RuleKind kind, int order);

/// Process-wide rule cache (concurrent readers, single-writer insertion).
const QuadratureRule &cached_rule(RuleKind kind, int order);

/// Exponent of the endpoint substitutions t = s^m / 1-t = s^m.
inline constexpr int kSubstitutionPower = 8;

inline TruncationPolicy oracle_policy() { return TruncationPolicy{1e-12, 2000, 3}; }

/// Gamma(b)/(Gamma(a)Gamma(b-a)) int_0^1 t^{a-1} (1-t)^{b-a-1} F_inner(x t) dt
/// where (a, b) is the last parameter pair of `outer` and F_inner is one
/// order lower.  Requires Re(b) > Re(a) > 0; |x| < 1 when the inner function
/// is a p+1Fp.  The order is doubled until two consecutive refinements agree
/// to 10 * policy.tol (at most two doublings from the rule's order).
EvalResult euler_integral(const HyperSpec &outer, const QuadratureRule &rule,
                          const TruncationPolicy &policy = oracle_policy());

/// (1/Gamma(a_0)) int_0^inf t^{a_0-1} e^{-t} pFp(x t) dt where a_0 is the
/// first numerator of the p+1Fp `spec`.  Requires Re(a_0) > 0, |x| < 1.
EvalResult laplace_integral(const HyperSpec &spec, const QuadratureRule &rule,
                            const TruncationPolicy &policy = oracle_policy());

} // namespace pfq
