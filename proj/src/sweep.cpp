// SPDX-License-Identifier: Apache-2.0
#include "pfq/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "pfq/format.hpp"

namespace pfq {

ComplexDD draw_parameter(SplitMix64 &rng, const ParameterBox &box) {
    double re = rng.uniform(box.re_min, box.re_max);
    double im = rng.uniform(box.im_min, box.im_max);
    return {re, im};
}

ComplexDD draw_denominator(SplitMix64 &rng, const ParameterBox &box) {
    for (;;) {
        ComplexDD b = draw_parameter(rng, box);
        double k = std::round(b.re().hi());
        if (k > 0.5)
            return b;
        if (std::hypot(b.re().hi() - k, b.im().hi()) >= 0.1)
            return b;
    }
}

ComplexDD draw_in_disk(SplitMix64 &rng, double radius) {
    for (;;) {
        double re = rng.uniform(-radius, radius);
        double im = rng.uniform(-radius, radius);
        if (re * re + im * im <= radius * radius)
            return {re, im};
    }
}

std::variant<AdditionInput, HyperSpec> make_draw(Theorem theorem, int p,
                                                 const ParameterBox &box, SplitMix64 &rng,
                                                 bool relaxed_domain) {
    switch (theorem) {
    case Theorem::T1: {
        AdditionInput in;
        for (int q = 0; q < p; ++q) {
            in.base.numerator.push_back(draw_parameter(rng, box));
            in.base.denominator.push_back(draw_denominator(rng, box));
        }
        in.x = draw_in_disk(rng, 1.5);
        in.y = draw_in_disk(rng, 1.5);
        return in;
    }
    case Theorem::T2: {
        AdditionInput in;
        in.base.numerator.push_back(draw_parameter(rng, box)); // a_0
        for (int q = 0; q < p; ++q) {
            in.base.numerator.push_back(draw_parameter(rng, box));
            in.base.denominator.push_back(draw_denominator(rng, box));
        }
        // |x| <= 0.45 keeps Re(x) < 1/2; |y| < min(|x|, 0.9 - |x|), or up to
        // the proof bound |y| < |1-x| when exploring the relaxed domain (the
        // direct-series side still needs |x+y| < 1)
        do {
            in.x = draw_in_disk(rng, 0.45);
        } while (abs_d(in.x) < 1e-6);
        double ax = abs_d(in.x);
        double ry = relaxed_domain
                        ? std::min(0.95 - ax, 0.98 * abs_d(ComplexDD(1.0) - in.x))
                        : std::min(ax, 0.9 - ax);
        do {
            in.y = draw_in_disk(rng, ry);
        } while (!(abs_d(in.y) < ry));
        return in;
    }
    case Theorem::T3: {
        HyperSpec spec;
        for (int q = 0; q < p + 1; ++q) {
            spec.numerator.push_back(draw_parameter(rng, box));
            spec.denominator.push_back(draw_denominator(rng, box));
        }
        spec.argument = draw_in_disk(rng, 2.0);
        return spec;
    }
    case Theorem::T4: {
        HyperSpec spec;
        spec.numerator.push_back(draw_parameter(rng, box)); // a_0
        for (int q = 0; q < p + 1; ++q) {
            spec.numerator.push_back(draw_parameter(rng, box));
            spec.denominator.push_back(draw_denominator(rng, box));
        }
        spec.argument = draw_in_disk(rng, 0.45);
        return spec;
    }
    }
    throw DomainError("make_draw: unknown theorem");
}

IdentityReport run_draw(const SweepConfig &config, std::uint64_t index) {
    SplitMix64 rng = SplitMix64::stream(config.seed, index);
    auto drawn = make_draw(config.theorem, config.p, config.box, rng, config.relaxed_domain);
    TruncationPolicy policy = identity_policy();
    if (std::holds_alternative<AdditionInput>(drawn))
        return verify(config.theorem, std::get<AdditionInput>(drawn), policy, config.tol,
                      config.relaxed_domain);
    return verify(config.theorem, std::get<HyperSpec>(drawn), policy, config.tol,
                  config.relaxed_domain);
}

SweepResult run_sweep(const SweepConfig &config) {
    if (config.draws < 1)
        throw DomainError("run_sweep: draws must be >= 1");
    if (config.p < 1)
        throw DomainError("run_sweep: p must be >= 1");
    if (!(config.box.re_min <= config.box.re_max) ||
        !(config.box.im_min <= config.box.im_max))
        throw DomainError("run_sweep: empty parameter box");
    if (!(config.tol > 0.0))
        throw DomainError("run_sweep: tolerance must be positive");

    SweepResult result;
    result.reports.resize(config.draws);
    result.millis.resize(config.draws);

    auto work_one = [&](int i) {
        auto start = std::chrono::steady_clock::now();
        result.reports[i] = run_draw(config, static_cast<std::uint64_t>(i));
        auto stop = std::chrono::steady_clock::now();
        result.millis[i] = std::chrono::duration<double, std::milli>(stop - start).count();
    };

    int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (int i = 0; i < config.draws; ++i)
            work_one(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    int i = next.fetch_add(1);
                    if (i >= config.draws)
                        return;
                    work_one(i);
                }
            });
        for (auto &th : pool)
            th.join();
    }

    for (const auto &rep : result.reports) {
        if (!rep.passed)
            ++result.failures;
        result.max_rel_diff = std::max(result.max_rel_diff, rep.rel_diff);
    }
    return result;
}

std::string render_sweep(const SweepConfig &config, const SweepResult &result) {
    if (config.format == OutputFormat::csv) {
        std::ostringstream os;
        os << csv_header() << '\n';
        for (std::size_t i = 0; i < result.reports.size(); ++i)
            os << csv_row(result.reports[i], static_cast<int>(i), config.p, result.millis[i])
               << '\n';
        return os.str();
    }
    if (config.format == OutputFormat::json) {
        nlohmann::json j;
        j["config"] = {
            {"theorem", theorem_name(config.theorem)},
            {"p", config.p},
            {"draws", config.draws},
            {"seed", config.seed},
            {"tol", format_dd(DDouble(config.tol))},
            {"relaxed_domain", config.relaxed_domain},
            {"box", {{"re_min", format_dd(DDouble(config.box.re_min))},
                     {"re_max", format_dd(DDouble(config.box.re_max))},
                     {"im_min", format_dd(DDouble(config.box.im_min))},
                     {"im_max", format_dd(DDouble(config.box.im_max))}}},
        };
        nlohmann::json draws = nlohmann::json::array();
        for (std::size_t i = 0; i < result.reports.size(); ++i) {
            nlohmann::json d = to_json(result.reports[i]);
            d["draw_index"] = i;
            draws.push_back(std::move(d));
        }
        j["draws"] = std::move(draws);
        j["aggregate"] = {
            {"failures", result.failures},
            {"max_rel_diff", format_dd(DDouble(result.max_rel_diff))},
            {"pass_rate", format_dd(DDouble(
                              double(config.draws - result.failures) / config.draws))},
        };
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "sweep: theorem " << theorem_name(config.theorem) << ", p=" << config.p
       << ", draws=" << config.draws << ", seed=" << config.seed << ", tol "
       << format_dd(DDouble(config.tol)) << '\n';
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const auto &r = result.reports[i];
        os << "draw " << i << ": " << (r.passed ? "pass" : "FAIL")
           << "  rel_diff=" << format_dd(DDouble(r.rel_diff));
        if (!r.diagnostic.empty())
            os << "  [" << r.diagnostic << "]";
        os << '\n';
    }
    os << "aggregate: " << (config.draws - result.failures) << "/" << config.draws
       << " passed, max rel_diff " << format_dd(DDouble(result.max_rel_diff)) << '\n';
    return os.str();
}

} // namespace pfq
