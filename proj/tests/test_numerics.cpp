// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfq/numerics.hpp"
#include "pfq/sweep.hpp"

using namespace pfq;

namespace {

double rel_diff_c(const ComplexDD &got, const ComplexDD &want) {
    double d = abs_d(got - want);
    double scale = std::max(abs_d(want), 1e-300);
    return d / scale;
}

ComplexDD random_param(SplitMix64 &rng) {
    return {rng.uniform(-8.0, 8.0), rng.uniform(-4.0, 4.0)};
}

// largest order keeping |(a)_n| inside the representable range
int representable_order(const ComplexDD &a, int n) {
    double am = std::max(1.0, abs_d(a));
    while (n > 1 && std::lgamma(am + n) - std::lgamma(am) > 640.0)
        n /= 2;
    return n;
}

} // namespace

TEST_CASE("pochhammer basics") {
    CHECK(pochhammer(ComplexDD(2.5), 0) == ComplexDD(1.0));
    CHECK_THROWS_AS(pochhammer(ComplexDD(8.0), 500), OverflowError);
    CHECK(pochhammer(ComplexDD(-3.0), 5) == ComplexDD(0.0)); // factor a+3 = 0
    CHECK(pochhammer(ComplexDD(1.0), 5) == ComplexDD(120.0)); // (1)_5 = 5!
    CHECK_THROWS_AS(pochhammer(ComplexDD(1.0), -1), DomainError);
}

TEST_CASE("pochhammer recurrence (a)_{n+1} = (a)_n (a+n)") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexDD a = random_param(rng);
        int n = representable_order(a, static_cast<int>(rng.uniform(0.0, 500.0)));
        ComplexDD lhs = pochhammer(a, n + 1);
        ComplexDD rhs = pochhammer(a, n) * (a + ComplexDD(double(n)));
        CHECK(rel_diff_c(lhs, rhs) <= 1e-28);
    }
}

TEST_CASE("pochhammer split (a)_{m+n} = (a)_m (a+m)_n") {
    SplitMix64 rng(102);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexDD a = random_param(rng);
        int total = representable_order(a, static_cast<int>(rng.uniform(0.0, 500.0)));
        int m = static_cast<int>(rng.uniform(0.0, double(total)));
        int n = total - m;
        ComplexDD lhs = pochhammer(a, m + n);
        ComplexDD rhs = pochhammer(a, m) * pochhammer(a + ComplexDD(double(m)), n);
        CHECK(rel_diff_c(lhs, rhs) <= 1e-27);
    }
}

TEST_CASE("pochhammer conjugation") {
    SplitMix64 rng(103);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexDD a = random_param(rng);
        int n = static_cast<int>(rng.uniform(0.0, 100.0));
        ComplexDD lhs = conj(pochhammer(a, n));
        ComplexDD rhs = pochhammer(conj(a), n);
        CHECK(abs_d(lhs - rhs) == 0.0); // identical operation sequence
    }
}

TEST_CASE("gamma at reference points") {
    CHECK(gamma(ComplexDD(1.0)) == ComplexDD(1.0));
    CHECK(rel_diff_c(gamma(ComplexDD(5.0)), ComplexDD(24.0)) < 1e-28);
    // sqrt(pi), computed independently by square-rooting the pi constant
    ComplexDD root_pi(sqrt(kPi));
    CHECK(rel_diff_c(gamma(ComplexDD(0.5)), root_pi) < 1e-28);
    // frozen mpmath values at binary64 inputs
    CHECK(rel_diff_c(gamma(ComplexDD(1.7)),
                     ComplexDD(DDouble(0.9086387328532904, -1.2642009061716268e-18))) < 1e-27);
    CHECK(rel_diff_c(gamma(ComplexDD(10.3)),
                     ComplexDD(DDouble(716430.6890623764, 1.641409919496974e-11))) < 1e-27);
    CHECK(rel_diff_c(gamma(ComplexDD(-2.5)),
                     ComplexDD(DDouble(-0.9453087204829419, 1.868400083990113e-17))) < 1e-27);
    CHECK(rel_diff_c(gamma(ComplexDD(40.25)),
                     ComplexDD(DDouble(5.117762131845142e+46, -1.1850421661601278e+30))) <
          1e-27);
    CHECK(rel_diff_c(gamma(ComplexDD(0.5, 0.5)),
                     ComplexDD(DDouble(0.8181639995417473, 4.975375468917679e-17),
                               DDouble(-0.7633138287139826, -4.9383619038253537e-17))) <
          1e-27);
    CHECK(rel_diff_c(gamma(ComplexDD(3.0, -4.0)),
                     ComplexDD(DDouble(0.0052255384713692146, -3.5734429997554064e-19),
                               DDouble(0.1725470792943002, 2.949038681686491e-19))) < 1e-27);
    CHECK(rel_diff_c(gamma(ComplexDD(-5.5, 2.25)),
                     ComplexDD(DDouble(-1.6478810283592807e-05, 1.1920688921931617e-21),
                               DDouble(-2.26959681373157e-05, 4.809072322488076e-22))) <
          1e-26);
    // large imaginary parts near the |z| <= 50 envelope
    CHECK(rel_diff_c(gamma(ComplexDD(1.5, 40.0)),
                     ComplexDD(DDouble(-3.447379525488221e-26, -1.3825456875480522e-42),
                               DDouble(3.855508260781656e-26, -4.892301547078744e-43))) <
          1e-25);
    CHECK(rel_diff_c(gamma(ComplexDD(-0.5, -30.0)),
                     ComplexDD(DDouble(6.685137841398655e-23, 2.442358606372802e-39),
                               DDouble(-2.7800740025020883e-22, -2.1284293382388495e-39))) <
          1e-25);
}

TEST_CASE("gamma recurrence z gamma(z) = gamma(z+1)") {
    SplitMix64 rng(104);
    int checked = 0;
    while (checked < 300) {
        ComplexDD z(rng.uniform(-40.0, 40.0), rng.uniform(-20.0, 20.0));
        if (near_nonpositive_integer(z, 0.1))
            continue;
        ComplexDD lhs = gamma(z + ComplexDD(1.0));
        ComplexDD rhs = z * gamma(z);
        CHECK(rel_diff_c(lhs, rhs) <= 1e-24);
        ++checked;
    }
}

TEST_CASE("gamma pole error") {
    CHECK_THROWS_AS(gamma(ComplexDD(0.0)), PoleError);
    CHECK_THROWS_AS(gamma(ComplexDD(-3.0)), PoleError);
    CHECK_THROWS_AS(gamma(ComplexDD(-17.0)), PoleError);
}

TEST_CASE("compensated accumulator") {
    CompensatedAccumulator<ComplexDD> acc;
    acc.add(ComplexDD(1.0));
    CHECK(acc.value() == ComplexDD(1.0));
    CHECK(acc.count() == 1);

    // the small addend survives the big cancellation
    CompensatedAccumulator<ComplexDD> acc2;
    acc2.add(ComplexDD(1e16));
    acc2.add(ComplexDD(1.0));
    acc2.add(ComplexDD(-1e16));
    CHECK(acc2.value() == ComplexDD(1.0));

    // 10^4 copies of 1/10 vs the rational oracle 10^4 * (1/10) = 1000
    CompensatedAccumulator<ComplexDD> acc3;
    ComplexDD tenth = ComplexDD(1.0) / ComplexDD(10.0);
    for (int i = 0; i < 10000; ++i)
        acc3.add(tenth);
    DDouble err = abs(acc3.value() - ComplexDD(1000.0));
    CHECK(err.hi() <= 1e-25);
}

TEST_CASE("near_nonpositive_integer detection") {
    int which = 0;
    CHECK(near_nonpositive_integer(ComplexDD(0.0), 1e-25, &which));
    CHECK(which == 0);
    CHECK(near_nonpositive_integer(ComplexDD(-7.0), 1e-25, &which));
    CHECK(which == -7);
    CHECK_FALSE(near_nonpositive_integer(ComplexDD(2.0), 1e-25));
    CHECK_FALSE(near_nonpositive_integer(ComplexDD(-3.0, 1e-3), 1e-25));
    CHECK_FALSE(near_nonpositive_integer(ComplexDD(-2.9999), 1e-25));
    // just inside / outside the tolerance
    CHECK(near_nonpositive_integer(ComplexDD(DDouble(-3.0, 1e-26), DDouble(0.0)), 1e-25));
    CHECK_FALSE(near_nonpositive_integer(ComplexDD(DDouble(-3.0, 1e-24), DDouble(0.0)), 1e-25));
}
