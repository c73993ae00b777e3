// SPDX-License-Identifier: Apache-2.0
#include "pfq/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pfq {

namespace {

void gather(int p, int order, int pos, int remaining, MultiIndex &scratch,
            std::vector<MultiIndex> &out) {
    if (pos == p - 1) {
        scratch.j[pos] = remaining;
        scratch.u[pos + 1] = scratch.u[pos] + remaining;
        out.push_back(scratch);
        return;
    }
    for (int j = 0; j <= remaining; ++j) {
        scratch.j[pos] = j;
        scratch.u[pos + 1] = scratch.u[pos] + j;
        gather(p, order, pos + 1, remaining - j, scratch, out);
    }
}

double shell_size(int p, int n) {
    // C(n+p-1, p-1)
    double c = 1.0;
    for (int k = 1; k < p; ++k)
        c *= double(n + k) / double(k);
    return c;
}

// The p-fold shell-summation engine shared by the four identities.  Weights
// are built incrementally from the per-position recurrences
//   A_q(u+1) = A_q(u) (a_q+u)/(b_q+u)
//   E_q(u, j+1) = E_q(u, j) (b_q-a_q+j) zeta [a_0+u+j] / ((b_q+u+j)(j+1))
// (the bracketed factor only for the Euler-type sums, where it accumulates
// (a_0)_{u_p} along the composition).
struct ShellSumEngine {
    int p = 0;
    std::vector<ComplexDD> a, b, bma;
    bool euler_type = false;
    ComplexDD a0{0.0};
    bool has_trailing = false;
    ComplexDD trail_num{0.0}, trail_den{0.0};
    ComplexDD zeta{0.0};
    ComplexDD inner_arg{0.0};
    TruncationPolicy policy;

    std::vector<std::vector<ComplexDD>> A; // A[q][u]
    std::vector<ComplexDD> last_e;         // E_{p-1}(u, last_j[u])
    std::vector<int> last_j;
    std::vector<int> clamp; // max j_q from a terminating (b_q - a_q), -1 if none
    std::vector<int> upath;
    HyperSpec inner;
    TruncationPolicy inner_policy;

    CompensatedAccumulator<ComplexDD> acc;
    double inner_err = 0.0;
    std::int64_t leaves = 0;
    double shell_abs = 0.0;
    double size_n = 1.0;

    ComplexDD e_step(const ComplexDD &e, int q, int u, int j) const {
        ComplexDD num = (bma[q] + ComplexDD(double(j))) * zeta;
        if (euler_type)
            num *= a0 + ComplexDD(double(u + j));
        ComplexDD den = (b[q] + ComplexDD(double(u + j))) * double(j + 1);
        return e * num / den;
    }

    void grow_tables(int n) {
        for (int q = 0; q < p; ++q) {
            auto &col = A[q];
            while (static_cast<int>(col.size()) <= n) {
                int u = static_cast<int>(col.size()) - 1;
                col.push_back(col[u] * ((a[q] + ComplexDD(double(u))) /
                                        (b[q] + ComplexDD(double(u)))));
            }
        }
        while (static_cast<int>(last_e.size()) <= n) {
            last_e.push_back(ComplexDD(1.0));
            last_j.push_back(0);
        }
    }

    void contribute(const ComplexDD &weight) {
        ++leaves;
        double wmag = abs_d(weight);
        if (wmag == 0.0)
            return;

        inner.numerator.clear();
        inner.denominator.clear();
        if (euler_type)
            inner.numerator.push_back(a0 + ComplexDD(double(upath[p])));
        for (int r = 0; r < p; ++r) {
            inner.numerator.push_back(a[r] + ComplexDD(double(upath[r])));
            inner.denominator.push_back(b[r] + ComplexDD(double(upath[r + 1])));
        }
        if (has_trailing) {
            inner.numerator.push_back(trail_num);
            inner.denominator.push_back(trail_den);
        }
        inner.argument = inner_arg;

        // Inner truncation below the outer budget: tol/10 when the weight is
        // of order one, proportionally looser once the weight damps the term.
        double eta = std::max(1.0, abs_d(acc.value()));
        double tol_inner = policy.tol * eta / (1000.0 * size_n * wmag);
        tol_inner = std::min(1e-4, std::max(policy.tol / 10.0, tol_inner));
        inner_policy.tol = tol_inner;

        EvalResult f = (tol_inner >= 1e-11) ? eval_series_f64(inner, inner_policy)
                                            : eval_series(inner, inner_policy);
        ComplexDD contrib = weight * f.value;
        acc.add(contrib);
        shell_abs += abs_d(contrib);
        inner_err += wmag * f.abs_error_estimate;
    }

    void dfs(int q, int n, const ComplexDD &w_in) {
        int u_in = upath[q];
        if (q == p - 1) {
            int j = n - u_in;
            if (clamp[q] >= 0 && j > clamp[q])
                return;
            while (last_j[u_in] < j) {
                last_e[u_in] = e_step(last_e[u_in], q, u_in, last_j[u_in]);
                ++last_j[u_in];
            }
            upath[p] = n;
            contribute(w_in * A[q][u_in] * last_e[u_in]);
            return;
        }
        ComplexDD base = w_in * A[q][u_in];
        ComplexDD e(1.0);
        int jmax = n - u_in;
        if (clamp[q] >= 0)
            jmax = std::min(jmax, clamp[q]);
        for (int j = 0; j <= jmax; ++j) {
            upath[q + 1] = u_in + j;
            dfs(q + 1, n, base * e);
            if (j < jmax)
                e = e_step(e, q, u_in, j);
        }
    }

    EvalResult run() {
        A.assign(p, {{ComplexDD(1.0)}});
        clamp.assign(p, -1);
        upath.assign(p + 1, 0);
        inner_policy = TruncationPolicy{policy.tol / 10.0, default_policy().max_order,
                                        policy.quiet_shells};

        bool zero_zeta = abs_d(zeta) == 0.0;
        bool all_clamped = true;
        long clamp_total = 0;
        for (int q = 0; q < p; ++q) {
            int which = 0;
            if (zero_zeta)
                clamp[q] = 0;
            else if (near_nonpositive_integer(bma[q], kIntegerDetectionTol, &which))
                clamp[q] = -which;
            if (clamp[q] < 0)
                all_clamped = false;
            else
                clamp_total += clamp[q];
        }

        double hist[8] = {0};
        int history = std::min(policy.quiet_shells, 8);
        int quiet = 0;
        int n = 0;
        bool exact = false;
        for (;; ++n) {
            if (all_clamped && n > clamp_total) {
                exact = true;
                break;
            }
            if (!all_clamped && n > policy.max_order)
                throw ConvergenceError(
                    "identity sum: max total order " + std::to_string(policy.max_order) +
                    " reached with shells still above threshold");
            grow_tables(n);
            size_n = shell_size(p, n);
            shell_abs = 0.0;
            dfs(0, n, ComplexDD(1.0));
            for (int k = history - 1; k > 0; --k)
                hist[k] = hist[k - 1];
            hist[0] = shell_abs;
            if (!all_clamped) {
                if (shell_abs < policy.tol * std::max(1.0, abs_d(acc.value())))
                    ++quiet;
                else
                    quiet = 0;
                if (quiet >= policy.quiet_shells)
                    break;
            }
        }

        EvalResult out;
        out.value = acc.value();
        out.terms_used = leaves;
        out.truncation_order = n;
        out.terminated_exactly = exact;
        if (exact) {
            out.abs_error_estimate =
                abs_d(out.value) * double(leaves + 1) * kDDEpsilon + inner_err;
        } else {
            double est = 2.0 * hist[0];
            for (int k = 0; k < history; ++k)
                est += hist[k];
            out.abs_error_estimate = est + inner_err;
        }
        return out;
    }
};

void scale_result(EvalResult &r, const ComplexDD &prefactor, const char *what) {
    r.value = prefactor * r.value;
    if (!r.value.is_finite())
        throw OverflowError(std::string(what) + ": result magnitude is not representable");
    r.abs_error_estimate *= abs_d(prefactor);
}

double rel_diff_of(const EvalResult &l, const EvalResult &r) {
    double ad = abs_d(l.value - r.value);
    return ad / std::max({abs_d(l.value), abs_d(r.value), kRelDiffFloor});
}

// The Euler-type outer sums decay only geometrically: at the |x/(x-1)| ->
// 0.82 corner of the admissible T2/T4 domains, 1e-25 would need ~370+
// shells, past the 300-shell budget.  Their conditioning is mild, so the
// evaluation tolerance follows the verification tolerance with five orders
// of headroom.  The exp-type sums (T1/T3) terminate factorially within a
// few dozen shells but cancel heavily, and keep the full working tolerance.
TruncationPolicy coupled_policy(const TruncationPolicy &policy, double verification_tol,
                                Theorem theorem) {
    TruncationPolicy out = policy;
    if (theorem == Theorem::T2 || theorem == Theorem::T4)
        out.tol = std::max(policy.tol, verification_tol * 1e-5);
    return out;
}

} // namespace

std::vector<MultiIndex> enumerate_shells(int p, int order) {
    if (p < 1)
        throw DomainError("enumerate_shells: p must be positive");
    if (order < 0)
        throw DomainError("enumerate_shells: order must be nonnegative");
    MultiIndex scratch;
    scratch.j.assign(p, 0);
    scratch.u.assign(p + 1, 0);
    std::vector<MultiIndex> out;
    gather(p, order, 0, order, scratch, out);
    return out;
}

EvalResult th1_addition_rhs(const AdditionInput &in, const TruncationPolicy &policy) {
    const auto p = in.base.numerator.size();
    if (p < 1 || in.base.denominator.size() != p)
        throw DomainError("th1_addition_rhs: base must be pFp with p >= 1");
    validate(in.base);

    ShellSumEngine eng;
    eng.p = static_cast<int>(p);
    eng.a = in.base.numerator;
    eng.b = in.base.denominator;
    for (std::size_t q = 0; q < p; ++q)
        eng.bma.push_back(eng.b[q] - eng.a[q]);
    eng.zeta = -in.x;
    eng.inner_arg = in.y;
    eng.policy = policy;

    EvalResult r = eng.run();
    scale_result(r, exp(in.x), "th1_addition_rhs");
    return r;
}

EvalResult th2_addition_rhs(const AdditionInput &in, const TruncationPolicy &policy,
                            bool relaxed_domain) {
    const auto pd = in.base.denominator.size();
    if (pd < 1 || in.base.numerator.size() != pd + 1)
        throw DomainError("th2_addition_rhs: base must be p+1Fp with p >= 1");
    validate(in.base);

    const ComplexDD &x = in.x;
    const ComplexDD &y = in.y;
    ComplexDD one_minus_x = ComplexDD(1.0) - x;
    if (abs_d(one_minus_x) == 0.0)
        throw DomainError("th2_addition_rhs: x = 1 is outside the domain");
    if (!relaxed_domain) {
        if (!(abs_d(x + y) < 1.0))
            throw DomainError("th2_addition_rhs: constraint |x+y| < 1 violated");
        if (!(abs_d(y) < abs_d(x)))
            throw DomainError("th2_addition_rhs: constraint |y| < |x| violated");
        if (!(x.re().hi() < 0.5))
            throw DomainError("th2_addition_rhs: constraint Re(x) < 1/2 violated");
    } else {
        // the proof's operative bounds; enough for both sums to converge
        if (!(x.re().hi() < 0.5))
            throw DomainError("th2_addition_rhs: constraint Re(x) < 1/2 violated");
        if (!(abs_d(y) < abs_d(one_minus_x)))
            throw DomainError("th2_addition_rhs: relaxed constraint |y| < |1-x| violated");
    }

    ShellSumEngine eng;
    eng.p = static_cast<int>(pd);
    eng.euler_type = true;
    eng.a0 = in.base.numerator.front();
    eng.a.assign(in.base.numerator.begin() + 1, in.base.numerator.end());
    eng.b = in.base.denominator;
    for (std::size_t q = 0; q < pd; ++q)
        eng.bma.push_back(eng.b[q] - eng.a[q]);
    eng.zeta = x / (x - ComplexDD(1.0));
    eng.inner_arg = (-y) / (x - ComplexDD(1.0));
    eng.policy = policy;

    EvalResult r = eng.run();
    scale_result(r, pow(one_minus_x, -eng.a0), "th2_addition_rhs");
    return r;
}

EvalResult th3_kummer_rhs(const HyperSpec &spec, const TruncationPolicy &policy) {
    const auto n = spec.numerator.size();
    if (n < 2 || spec.denominator.size() != n)
        throw DomainError("th3_kummer_rhs: spec must be p+1Fp+1 with p >= 1");
    validate(spec);
    const auto p = n - 1;

    ShellSumEngine eng;
    eng.p = static_cast<int>(p);
    eng.a.assign(spec.numerator.begin(), spec.numerator.end() - 1);
    eng.b.assign(spec.denominator.begin(), spec.denominator.end() - 1);
    for (std::size_t q = 0; q < p; ++q)
        eng.bma.push_back(eng.b[q] - eng.a[q]);
    eng.has_trailing = true;
    eng.trail_num = spec.denominator.back() - spec.numerator.back();
    eng.trail_den = spec.denominator.back();
    eng.zeta = -spec.argument;
    eng.inner_arg = -spec.argument;
    eng.policy = policy;

    EvalResult r = eng.run();
    scale_result(r, exp(spec.argument), "th3_kummer_rhs");
    return r;
}

EvalResult th4_euler_rhs(const HyperSpec &spec, const TruncationPolicy &policy,
                         bool relaxed_domain) {
    const auto nd = spec.denominator.size();
    if (nd < 2 || spec.numerator.size() != nd + 1)
        throw DomainError("th4_euler_rhs: spec must be p+2Fp+1 with p >= 1");
    validate(spec);
    const auto p = nd - 1;

    const ComplexDD &x = spec.argument;
    ComplexDD one_minus_x = ComplexDD(1.0) - x;
    if (abs_d(one_minus_x) == 0.0)
        throw DomainError("th4_euler_rhs: x = 1 is outside the domain");
    if (!relaxed_domain) {
        if (!(abs_d(x) < 1.0))
            throw DomainError("th4_euler_rhs: constraint |x| < 1 violated");
        if (!(x.re().hi() < 0.5))
            throw DomainError("th4_euler_rhs: constraint Re(x) < 1/2 violated");
    } else {
        // Re(x) < 1/2 keeps |x/(x-1)| < 1, which both sums need
        if (!(x.re().hi() < 0.5))
            throw DomainError("th4_euler_rhs: constraint Re(x) < 1/2 violated");
    }

    ShellSumEngine eng;
    eng.p = static_cast<int>(p);
    eng.euler_type = true;
    eng.a0 = spec.numerator.front();
    eng.a.assign(spec.numerator.begin() + 1, spec.numerator.end() - 1);
    eng.b.assign(spec.denominator.begin(), spec.denominator.end() - 1);
    for (std::size_t q = 0; q < p; ++q)
        eng.bma.push_back(eng.b[q] - eng.a[q]);
    eng.has_trailing = true;
    eng.trail_num = spec.denominator.back() - spec.numerator.back();
    eng.trail_den = spec.denominator.back();
    eng.zeta = x / (x - ComplexDD(1.0));
    eng.inner_arg = eng.zeta;
    eng.policy = policy;

    EvalResult r = eng.run();
    scale_result(r, pow(one_minus_x, -eng.a0), "th4_euler_rhs");
    return r;
}

IdentityReport verify(Theorem theorem, const AdditionInput &in,
                      const TruncationPolicy &policy, double verification_tol,
                      bool relaxed_domain) {
    if (theorem != Theorem::T1 && theorem != Theorem::T2)
        throw DomainError("verify: addition inputs apply to theorems T1/T2 only");

    IdentityReport rep;
    rep.theorem = theorem;
    rep.numerator = in.base.numerator;
    rep.denominator = in.base.denominator;
    rep.x = in.x;
    rep.y = in.y;
    rep.has_y = true;
    rep.relaxed_domain = relaxed_domain;

    bool denominators_ok = true;
    for (const auto &bq : in.base.denominator)
        if (near_nonpositive_integer(bq, kIntegerDetectionTol))
            denominators_ok = false;

    if (theorem == Theorem::T1) {
        rep.domain_ok = denominators_ok;
        if (!denominators_ok)
            rep.diagnostic = "denominator parameter is a nonpositive integer";
    } else {
        bool strict = denominators_ok && abs_d(in.x + in.y) < 1.0 &&
                      abs_d(in.y) < abs_d(in.x) && in.x.re().hi() < 0.5;
        bool relaxed = denominators_ok && in.x.re().hi() < 0.5 &&
                       abs_d(in.y) < abs_d(ComplexDD(1.0) - in.x);
        rep.domain_ok = relaxed_domain ? relaxed : strict;
        rep.experimental = relaxed_domain && relaxed && !strict;
        if (!rep.domain_ok)
            rep.diagnostic = !denominators_ok
                                 ? "denominator parameter is a nonpositive integer"
                                 : (relaxed_domain
                                        ? "relaxed domain requires Re(x) < 1/2 and |y| < |1-x|"
                                        : "domain requires |x+y| < 1, |y| < |x|, Re(x) < 1/2");
    }
    if (!rep.domain_ok)
        return rep;

    try {
        HyperSpec lhs_spec = in.base;
        lhs_spec.argument = in.x + in.y;
        // the direct series runs under its own order cap; policy.max_order
        // limits the outer shells of the right-hand side
        TruncationPolicy rhs_policy = coupled_policy(policy, verification_tol, theorem);
        TruncationPolicy lhs_policy{rhs_policy.tol, default_policy().max_order,
                                    policy.quiet_shells};
        rep.lhs = eval_series(lhs_spec, lhs_policy);
        rep.rhs = theorem == Theorem::T1 ? th1_addition_rhs(in, rhs_policy)
                                         : th2_addition_rhs(in, rhs_policy, relaxed_domain);
    } catch (const Error &e) {
        rep.diagnostic = e.what();
        return rep;
    }
    rep.abs_diff = abs_d(rep.lhs.value - rep.rhs.value);
    rep.rel_diff = rel_diff_of(rep.lhs, rep.rhs);
    rep.passed = rep.domain_ok && rep.rel_diff <= verification_tol;
    return rep;
}

IdentityReport verify(Theorem theorem, const HyperSpec &spec,
                      const TruncationPolicy &policy, double verification_tol,
                      bool relaxed_domain) {
    if (theorem != Theorem::T3 && theorem != Theorem::T4)
        throw DomainError("verify: transformation specs apply to theorems T3/T4 only");

    IdentityReport rep;
    rep.theorem = theorem;
    rep.numerator = spec.numerator;
    rep.denominator = spec.denominator;
    rep.x = spec.argument;
    rep.relaxed_domain = relaxed_domain;

    bool denominators_ok = true;
    for (const auto &bq : spec.denominator)
        if (near_nonpositive_integer(bq, kIntegerDetectionTol))
            denominators_ok = false;

    if (theorem == Theorem::T3) {
        rep.domain_ok = denominators_ok;
        if (!denominators_ok)
            rep.diagnostic = "denominator parameter is a nonpositive integer";
    } else {
        // the verifier's LHS needs |x| < 1 regardless of the relaxed flag
        rep.domain_ok =
            denominators_ok && abs_d(spec.argument) < 1.0 && spec.argument.re().hi() < 0.5;
        if (!rep.domain_ok)
            rep.diagnostic = !denominators_ok
                                 ? "denominator parameter is a nonpositive integer"
                                 : "domain requires |x| < 1 and Re(x) < 1/2";
    }
    if (!rep.domain_ok)
        return rep;

    try {
        TruncationPolicy rhs_policy = coupled_policy(policy, verification_tol, theorem);
        TruncationPolicy lhs_policy{rhs_policy.tol, default_policy().max_order,
                                    policy.quiet_shells};
        rep.lhs = eval_series(spec, lhs_policy);
        rep.rhs = theorem == Theorem::T3 ? th3_kummer_rhs(spec, rhs_policy)
                                         : th4_euler_rhs(spec, rhs_policy, relaxed_domain);
    } catch (const Error &e) {
        rep.diagnostic = e.what();
        return rep;
    }
    rep.abs_diff = abs_d(rep.lhs.value - rep.rhs.value);
    rep.rel_diff = rel_diff_of(rep.lhs, rep.rhs);
    rep.passed = rep.domain_ok && rep.rel_diff <= verification_tol;
    return rep;
}

} // namespace pfq
