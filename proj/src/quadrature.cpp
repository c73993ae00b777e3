// SPDX-License-Identifier: Apache-2.0
#include "pfq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace pfq {

namespace {

constexpr int kMaxNewtonIterations = 200;

// Legendre P_n(z) and P_{n-1}(z) on [-1,1] by the three-term recurrence.
void legendre_pair(int n, DDouble z, DDouble &pn, DDouble &pnm1) {
    DDouble p0(1.0), p1 = z;
    if (n == 0) {
        pn = p0;
        pnm1 = DDouble(0.0);
        return;
    }
    for (int k = 1; k < n; ++k) {
        DDouble p2 = ((2.0 * k + 1.0) * (z * p1) - double(k) * p0) / double(k + 1);
        p0 = p1;
        p1 = p2;
    }
    pn = p1;
    pnm1 = p0;
}

QuadratureRule build_legendre(int n) {
    QuadratureRule rule;
    rule.kind = RuleKind::legendre_01;
    rule.order = n;
    rule.nodes.resize(n);
    int half = (n + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        DDouble z(std::cos(M_PI * (i - 0.25) / (n + 0.5)));
        DDouble pn, pnm1, pp;
        double prev_step = std::numeric_limits<double>::infinity();
        int iter = 0;
        for (;; ++iter) {
            if (iter >= kMaxNewtonIterations)
                throw ConvergenceError("build_rule: Legendre root did not converge");
            legendre_pair(n, z, pn, pnm1);
            pp = double(n) * (z * pn - pnm1) / (z * z - DDouble(1.0));
            DDouble dz = pn / pp;
            z -= dz;
            double step = std::fabs(dz.hi());
            if (step < 1e-30 || (iter >= 3 && step >= prev_step))
                break;
            prev_step = step;
        }
        legendre_pair(n, z, pn, pnm1);
        pp = double(n) * (z * pn - pnm1) / (z * z - DDouble(1.0));
        DDouble w = DDouble(2.0) / ((DDouble(1.0) - z * z) * pp * pp);
        // map [-1,1] -> (0,1); z > 0 is the right half
        rule.nodes[i - 1].abscissa = 0.5 * (DDouble(1.0) - z);
        rule.nodes[i - 1].weight = 0.5 * w;
        rule.nodes[n - i].abscissa = 0.5 * (DDouble(1.0) + z);
        rule.nodes[n - i].weight = 0.5 * w;
    }
    for (auto &node : rule.nodes)
        node.scaled_weight = node.weight;
    return rule;
}

// Laguerre L_n, L_{n-1} with a power-of-two rescale guard; values reach
// e^{z/2} scale and would overflow the working range for large n z.
void laguerre_pair(int n, DDouble z, DDouble &ln, DDouble &lnm1, int &scale_exp) {
    DDouble p0(1.0), p1 = DDouble(1.0) - z;
    scale_exp = 0;
    for (int k = 1; k < n; ++k) {
        DDouble p2 = ((2.0 * k + 1.0 - z) * p1 - double(k) * p0) / double(k + 1);
        p0 = p1;
        p1 = p2;
        double m = std::max(std::fabs(p1.hi()), std::fabs(p0.hi()));
        if (m > 0x1p500) {
            p0 = ldexp(p0, -500);
            p1 = ldexp(p1, -500);
            scale_exp += 500;
        } else if (m > 0.0 && m < 0x1p-500) {
            p0 = ldexp(p0, 500);
            p1 = ldexp(p1, 500);
            scale_exp -= 500;
        }
    }
    ln = p1;
    lnm1 = p0;
}

QuadratureRule build_laguerre(int n) {
    QuadratureRule rule;
    rule.kind = RuleKind::laguerre_0inf;
    rule.order = n;
    rule.nodes.resize(n);
    double z_prev = 0.0, z_prev2 = 0.0;
    for (int i = 1; i <= n; ++i) {
        double seed;
        if (i == 1)
            seed = 3.0 / (1.0 + 2.4 * n);
        else if (i == 2)
            seed = z_prev + 15.0 / (1.0 + 2.5 * n);
        else {
            double ai = i - 2;
            seed = z_prev + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z_prev - z_prev2);
        }
        DDouble z(seed);
        DDouble ln, lnm1;
        int se = 0;
        double prev_step = std::numeric_limits<double>::infinity();
        int iter = 0;
        for (;; ++iter) {
            if (iter >= kMaxNewtonIterations)
                throw ConvergenceError("build_rule: Laguerre root did not converge");
            laguerre_pair(n, z, ln, lnm1, se);
            DDouble lp = double(n) * (ln - lnm1) / z;
            DDouble dz = ln / lp;
            z -= dz;
            double step = std::fabs(dz.hi()) / std::max(1.0, std::fabs(z.hi()));
            if (step < 1e-30 || (iter >= 3 && step >= prev_step))
                break;
            prev_step = step;
        }
        // w_i = z_i / ((n+1)^2 L_{n+1}(z_i)^2), assembled in logs because
        // L_{n+1} carries the 2^{scale_exp} rescale
        laguerre_pair(n + 1, z, ln, lnm1, se);
        DDouble log_w = log(z) - 2.0 * log(DDouble(double(n + 1))) -
                        2.0 * log(abs(ln)) - (2.0 * se) * kLn2;
        QuadratureNode node;
        node.abscissa = z;
        node.weight = log_w.hi() < -745.0 ? DDouble(0.0) : exp(log_w);
        node.scaled_weight = exp(log_w + z);
        rule.nodes[i - 1] = node;
        z_prev2 = z_prev;
        z_prev = z.hi();
    }
    return rule;
}

std::shared_mutex rule_cache_mutex;
std::map<std::pair<int, int>, QuadratureRule> rule_cache;

// real power t^e with complex e, t in (0,1]: principal branch, ln t real
ComplexDD real_pow(DDouble ln_t, const ComplexDD &e) { return exp(e * ComplexDD(ln_t)); }

struct IntegralParts {
    ComplexDD value{0.0};
    double inner_err = 0.0;
    std::int64_t inner_evals = 0;
};

} // namespace

QuadratureRule build_rule(RuleKind kind, int order) {
    if (order < 2 || order > 512)
        throw DomainError("build_rule: order must be in [2, 512]");
    return kind == RuleKind::legendre_01 ? build_legendre(order) : build_laguerre(order);
}

const QuadratureRule &cached_rule(RuleKind kind, int order) {
    auto key = std::make_pair(static_cast<int>(kind), order);
    {
        std::shared_lock lock(rule_cache_mutex);
        auto it = rule_cache.find(key);
        if (it != rule_cache.end())
            return it->second;
    }
    QuadratureRule fresh = build_rule(kind, order);
    std::unique_lock lock(rule_cache_mutex);
    return rule_cache.emplace(key, std::move(fresh)).first->second;
}

EvalResult euler_integral(const HyperSpec &outer, const QuadratureRule &rule,
                          const TruncationPolicy &policy) {
    if (rule.kind != RuleKind::legendre_01)
        throw DomainError("euler_integral: requires a legendre_01 rule");
    auto pn = outer.numerator.size();
    auto qd = outer.denominator.size();
    if (pn < 1 || qd < 1 || (pn != qd && pn != qd + 1))
        throw DomainError("euler_integral: spec must be p+1Fp+1 or p+2Fp+1 shaped");
    validate(outer);
    ComplexDD a = outer.numerator.back();
    ComplexDD b = outer.denominator.back();
    ComplexDD bma = b - a;
    if (!(b.re().hi() > a.re().hi()) || !(a.re().hi() > 0.0))
        throw DomainError("euler_integral: requires Re(b_last) > Re(a_last) > 0");
    bool inner_unit_disk = pn == qd + 1;
    if (inner_unit_disk && !(abs_d(outer.argument) < 1.0))
        throw DomainError("euler_integral: requires |x| < 1 for the p+2Fp+1 form");

    HyperSpec inner;
    inner.numerator.assign(outer.numerator.begin(), outer.numerator.end() - 1);
    inner.denominator.assign(outer.denominator.begin(), outer.denominator.end() - 1);
    TruncationPolicy inner_policy{policy.tol / 10.0, default_policy().max_order,
                                  policy.quiet_shells};

    const int m = kSubstitutionPower;
    // s ranges over (0, (1/2)^(1/m)] on both halves
    DDouble c = exp(log(DDouble(0.5)) / double(m));
    ComplexDD left_exponent = a * double(m) - ComplexDD(1.0);         // s^{ma-1}
    ComplexDD right_exponent = bma * double(m) - ComplexDD(1.0);      // s^{m(b-a)-1}
    ComplexDD left_outer = bma - ComplexDD(1.0);                      // (1-t)^{b-a-1}
    ComplexDD right_outer = a - ComplexDD(1.0);                       // t^{a-1}

    auto integrate = [&](int order, IntegralParts &parts) {
        const QuadratureRule &r =
            order == rule.order ? rule : cached_rule(RuleKind::legendre_01, order);
        CompensatedAccumulator<ComplexDD> sum;
        for (const auto &node : r.nodes) {
            DDouble s = c * node.abscissa;
            DDouble w = c * node.weight * double(m);
            DDouble ln_s = log(s);
            DDouble t = exp(ln_s * double(m)); // s^m in (0, 1/2]
            DDouble one_minus_t = DDouble(1.0) - t;
            HyperSpec eval_spec = inner;
            // left half: t = s^m
            eval_spec.argument = outer.argument * t;
            EvalResult f_left = eval_series(eval_spec, inner_policy);
            ComplexDD g_left =
                real_pow(ln_s, left_exponent) * real_pow(log(one_minus_t), left_outer);
            sum.add(g_left * f_left.value * w);
            // right half: 1 - t = s^m
            eval_spec.argument = outer.argument * one_minus_t;
            EvalResult f_right = eval_series(eval_spec, inner_policy);
            ComplexDD g_right =
                real_pow(ln_s, right_exponent) * real_pow(log(one_minus_t), right_outer);
            sum.add(g_right * f_right.value * w);
            parts.inner_err += abs_d(g_left) * w.hi() * f_left.abs_error_estimate +
                               abs_d(g_right) * w.hi() * f_right.abs_error_estimate;
            parts.inner_evals += 2;
        }
        parts.value = sum.value();
    };

    ComplexDD prefactor = gamma(b) / (gamma(a) * gamma(bma));
    IntegralParts coarse, fine;
    integrate(rule.order, coarse);
    int order = 2 * rule.order;
    integrate(order, fine);
    double change = abs_d(fine.value - coarse.value);
    if (change > 10.0 * policy.tol * std::max(1.0, abs_d(fine.value))) {
        coarse = fine;
        fine = IntegralParts{};
        order *= 2;
        integrate(order, fine);
        change = abs_d(fine.value - coarse.value);
        if (change > 10.0 * policy.tol * std::max(1.0, abs_d(fine.value)))
            throw ConvergenceError("euler_integral: quadrature did not settle after doubling "
                                   "the rule order twice");
    }

    EvalResult out;
    out.value = prefactor * fine.value;
    if (!out.value.is_finite())
        throw OverflowError("euler_integral: result magnitude is not representable");
    double pf = abs_d(prefactor);
    out.abs_error_estimate = pf * (change + fine.inner_err);
    out.terms_used = coarse.inner_evals + fine.inner_evals;
    out.truncation_order = order;
    return out;
}

EvalResult laplace_integral(const HyperSpec &spec, const QuadratureRule &rule,
                            const TruncationPolicy &policy) {
    if (rule.kind != RuleKind::laguerre_0inf)
        throw DomainError("laplace_integral: requires a laguerre_0inf rule");
    auto pn = spec.numerator.size();
    auto qd = spec.denominator.size();
    if (pn != qd + 1)
        throw DomainError("laplace_integral: spec must be p+1Fp shaped");
    validate(spec);
    ComplexDD a0 = spec.numerator.front();
    if (!(a0.re().hi() > 0.0))
        throw DomainError("laplace_integral: requires Re(a_0) > 0");
    if (!(abs_d(spec.argument) < 1.0))
        throw DomainError("laplace_integral: requires |argument| < 1");

    HyperSpec inner;
    inner.numerator.assign(spec.numerator.begin() + 1, spec.numerator.end());
    inner.denominator = spec.denominator;
    TruncationPolicy inner_policy{policy.tol / 10.0, default_policy().max_order,
                                  policy.quiet_shells};

    const int m = kSubstitutionPower;
    ComplexDD left_exponent = a0 * double(m) - ComplexDD(1.0); // s^{m a0 - 1}
    ComplexDD t_exponent = a0 - ComplexDD(1.0);

    // [0,1]: t = s^m under a legendre rule; [1,inf): t = 1 + v under the
    // laguerre rule, e^{-t} F(x t) evaluated in scaled form and the weight
    // carried as w e^{v} so neither side under- or overflows.
    auto integrate = [&](int lag_order, IntegralParts &parts) {
        const QuadratureRule &lag =
            lag_order == rule.order ? rule : cached_rule(RuleKind::laguerre_0inf, lag_order);
        const QuadratureRule &leg =
            cached_rule(RuleKind::legendre_01, std::max(64, lag_order));
        CompensatedAccumulator<ComplexDD> sum;
        HyperSpec eval_spec = inner;
        for (const auto &node : leg.nodes) {
            DDouble s = node.abscissa;
            DDouble ln_s = log(s);
            DDouble t = exp(ln_s * double(m));
            eval_spec.argument = spec.argument * t;
            EvalResult f = eval_series(eval_spec, inner_policy);
            ComplexDD g = real_pow(ln_s, left_exponent) * exp(-t) * double(m);
            sum.add(g * f.value * node.weight);
            parts.inner_err += abs_d(g) * node.weight.hi() * f.abs_error_estimate;
            ++parts.inner_evals;
        }
        for (const auto &node : lag.nodes) {
            DDouble t = DDouble(1.0) + node.abscissa;
            // |e^{-t} F(x t)| ~ e^{-(1-Re x) t}: below the representable
            // floor the node cannot contribute
            if ((1.0 - spec.argument.re().hi()) * t.hi() > 745.0)
                continue;
            eval_spec.argument = spec.argument * t;
            EvalResult f = eval_series_scaled(eval_spec, inner_policy, ComplexDD(-t));
            ComplexDD g = real_pow(log(t), t_exponent);
            sum.add(g * f.value * node.scaled_weight);
            parts.inner_err += abs_d(g) * node.scaled_weight.hi() * f.abs_error_estimate;
            ++parts.inner_evals;
        }
        parts.value = sum.value();
    };

    ComplexDD prefactor = ComplexDD(1.0) / gamma(a0);
    IntegralParts coarse, fine;
    integrate(rule.order, coarse);
    int order = 2 * rule.order;
    integrate(order, fine);
    double change = abs_d(fine.value - coarse.value);
    if (change > 10.0 * policy.tol * std::max(1.0, abs_d(fine.value))) {
        coarse = fine;
        fine = IntegralParts{};
        order *= 2;
        integrate(order, fine);
        change = abs_d(fine.value - coarse.value);
        if (change > 10.0 * policy.tol * std::max(1.0, abs_d(fine.value)))
            throw ConvergenceError("laplace_integral: quadrature did not settle after "
                                   "doubling the rule order twice");
    }

    EvalResult out;
    out.value = prefactor * fine.value;
    if (!out.value.is_finite())
        throw OverflowError("laplace_integral: result magnitude is not representable");
    out.abs_error_estimate = abs_d(prefactor) * (change + fine.inner_err);
    out.terms_used = coarse.inner_evals + fine.inner_evals;
    out.truncation_order = order;
    return out;
}

} // namespace pfq
