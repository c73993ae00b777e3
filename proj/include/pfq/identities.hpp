// SPDX-License-Identifier: Apache-2.0
//
// Right-hand sides of the four identities: the addition formulas for pFp and
// p+1Fp, and the Kummer- and Euler-type transformations built from them.
// The p-fold sums are enumerated shell by shell (fixed total order) with a
// quiet-shell stopping rule, and each shell member weights one shifted inner
// hypergeometric evaluation.
#pragma once

#include <string>
#include <vector>

#include "pfq/series.hpp"

namespace pfq {

/// Largest total order of the outer p-fold sums.
inline constexpr int kDefaultMaxTotalOrder = 300;

/// Outer-sum policy: same knobs as the series, applied at shell granularity.
inline TruncationPolicy identity_policy() {
    return TruncationPolicy{1e-25, kDefaultMaxTotalOrder, 3};
}

/// One term of a p-fold sum: indices j[0..p-1] (the paper's j_1..j_p) and
/// their partial sums u[0..p] with u[0] = 0, u[q] = u[q-1] + j[q-1].
struct MultiIndex {
    std::vector<int> j;
    std::vector<int> u;
};

/// Every MultiIndex of total order `order`, in lexicographic order of j.
/// Shell size is C(order+p-1, p-1).
std::vector<MultiIndex> enumerate_shells(int p, int order);

/// Base parameters of an addition formula plus the split argument x + y.
/// For Theorem 1 the base is a pFp pair set; for Theorem 2 it carries the
/// extra leading numerator a_0 (numerator.size() == denominator.size() + 1).
struct AdditionInput {
    HyperSpec base; ///< argument field unused
    ComplexDD x{0.0};
    ComplexDD y{0.0};
};

enum class Theorem { T1, T2, T3, T4 };

/// e^x sum over j of prod_q [(b_q-a_q)_{j_q} (a_q)_{u_{q-1}} / (b_q)_{u_q}]
/// (-x)^{j_q}/j_q! * pFp(a+shifts; b+shifts; y)  ==  pFp(a; b; x+y).
EvalResult th1_addition_rhs(const AdditionInput &in,
                            const TruncationPolicy &policy = identity_policy());

/// (1-x)^{-a_0} sum over j of (a_0)_{u_p} prod_q [...] (x/(x-1))^{j_q}
/// * p+1Fp(a_0+u_p, a+shifts; b+shifts; -y/(x-1))  ==  p+1Fp(a_0, a; b; x+y),
/// valid for |x+y| < 1, |y| < |x|, Re(x) < 1/2 (relaxed: |y| < |1-x|).
EvalResult th2_addition_rhs(const AdditionInput &in,
                            const TruncationPolicy &policy = identity_policy(),
                            bool relaxed_domain = false);

/// Kummer-type transformation: p+1Fp+1(spec at x) as e^x times a p-fold sum
/// of p+1Fp+1 values at -x; the trailing parameter pair enters only through
/// the inner function's last numerator b_{p+1} - a_{p+1}.
EvalResult th3_kummer_rhs(const HyperSpec &spec,
                          const TruncationPolicy &policy = identity_policy());

/// Euler-type transformation: p+2Fp+1(spec at x) as (1-x)^{-a_0} times a
/// p-fold sum of p+2Fp+1 values at x/(x-1); requires |x| < 1, Re(x) < 1/2
/// unless relaxed.
EvalResult th4_euler_rhs(const HyperSpec &spec,
                         const TruncationPolicy &policy = identity_policy(),
                         bool relaxed_domain = false);

struct IdentityReport {
    Theorem theorem = Theorem::T1;
    EvalResult lhs;
    EvalResult rhs;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    bool domain_ok = false;
    bool passed = false;
    bool relaxed_domain = false;
    bool experimental = false; ///< relaxed gate admitted what the strict one rejects
    std::string diagnostic;    ///< nonempty when an evaluation failed
    // input echo
    std::vector<ComplexDD> numerator;
    std::vector<ComplexDD> denominator;
    ComplexDD x{0.0};
    ComplexDD y{0.0};
    bool has_y = false;
};

/// Floor of the rel_diff denominator.
inline constexpr double kRelDiffFloor = 1e-300;

/// LHS by direct series at x+y (T1/T2); RHS by the matching *_rhs operation.
/// Evaluation errors land in the report's diagnostic, never escape.
IdentityReport verify(Theorem theorem, const AdditionInput &in,
                      const TruncationPolicy &policy, double verification_tol,
                      bool relaxed_domain = false);

/// LHS by direct series at x (T3/T4).
IdentityReport verify(Theorem theorem, const HyperSpec &spec,
                      const TruncationPolicy &policy, double verification_tol,
                      bool relaxed_domain = false);

} // namespace pfq
