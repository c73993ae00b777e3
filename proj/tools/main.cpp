// SPDX-License-Identifier: Apache-2.0
//
// pfq: evaluate generalized hypergeometric functions and verify the addition
// formulas and Kummer/Euler-type transformations that connect them.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 input/domain error,
// 3 numerical nonconvergence or overflow.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fstream>

#include "pfq/format.hpp"
#include "pfq/quadrature.hpp"
#include "pfq/sweep.hpp"

namespace {

using namespace pfq;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

// "1.25", "1.25+0.5i", "1.25-0.5i", or "re,im"
ComplexDD parse_complex(const std::string &text) {
    std::string s = text;
    auto comma = s.find(',');
    try {
        if (comma != std::string::npos) {
            double re = std::stod(s.substr(0, comma));
            double im = std::stod(s.substr(comma + 1));
            return {re, im};
        }
        if (!s.empty() && (s.back() == 'i' || s.back() == 'I')) {
            s.pop_back();
            // split at the sign of the imaginary part (skip position 0 and
            // any exponent sign)
            for (std::size_t k = s.size(); k-- > 1;) {
                if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                    double re = std::stod(s.substr(0, k));
                    double im = std::stod(s.substr(k));
                    return {re, im};
                }
            }
            return {0.0, std::stod(s)}; // pure imaginary
        }
        return {std::stod(s), 0.0};
    } catch (const std::exception &) {
        throw DomainError("cannot parse complex number: " + text);
    }
}

std::vector<ComplexDD> parse_complex_list(const std::string &text) {
    std::vector<ComplexDD> out;
    if (text.empty())
        return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto next = text.find(',', pos);
        // a comma inside re,im pairs is not used in list context; entries are
        // comma-separated with complex entries written as re+imi
        std::string tok =
            next == std::string::npos ? text.substr(pos) : text.substr(pos, next - pos);
        if (!tok.empty())
            out.push_back(parse_complex(tok));
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return out;
}

OutputFormat parse_format(const std::string &name) {
    if (name == "json")
        return OutputFormat::json;
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "text")
        return OutputFormat::text;
    throw DomainError("unknown format: " + name);
}

// Flat key=value config file, keys matching the sweep flag names without
// leading dashes.  Values given explicitly on the command line win.
void apply_sweep_config(const std::string &path, const CLI::App &app, const CLI::App &sweep,
                        SweepConfig &config, std::string &theorem, std::uint64_t &seed,
                        std::string &format_name) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open config file: " + path);
    auto given = [&](const std::string &flag) {
        return sweep.count(flag) > 0;
    };
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(line_no) +
                              ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "theorem") {
                if (!given("--theorem")) theorem = value;
            } else if (key == "p") {
                if (!given("--p")) config.p = std::stoi(value);
            } else if (key == "draws") {
                if (!given("--draws")) config.draws = std::stoi(value);
            } else if (key == "seed") {
                if (!given("--seed")) seed = std::stoull(value);
            } else if (key == "tol") {
                if (!given("--tol")) config.tol = std::stod(value);
            } else if (key == "re-min") {
                if (!given("--re-min")) config.box.re_min = std::stod(value);
            } else if (key == "re-max") {
                if (!given("--re-max")) config.box.re_max = std::stod(value);
            } else if (key == "im-min") {
                if (!given("--im-min")) config.box.im_min = std::stod(value);
            } else if (key == "im-max") {
                if (!given("--im-max")) config.box.im_max = std::stod(value);
            } else if (key == "relaxed-domain") {
                if (!given("--relaxed-domain"))
                    config.relaxed_domain = value == "true" || value == "1";
            } else if (key == "threads") {
                if (!given("--threads")) config.threads = std::stoi(value);
            } else if (key == "format") {
                if (app.count("--format") == 0) format_name = value;
            } else {
                throw DomainError("config line " + std::to_string(line_no) +
                                  ": unknown key " + key);
            }
        } catch (const std::invalid_argument &) {
            throw DomainError("config line " + std::to_string(line_no) +
                              ": cannot parse value for " + key);
        }
    }
}

void print_eval(const EvalResult &r, OutputFormat format) {
    if (format == OutputFormat::json) {
        std::cout << to_json(r).dump(2) << '\n';
    } else if (format == OutputFormat::csv) {
        std::cout << "value,abs_error_estimate,terms_used,truncation_order,"
                     "terminated_exactly\n";
        std::cout << format_complex_compact(r.value) << ','
                  << format_dd(DDouble(r.abs_error_estimate)) << ',' << r.terms_used << ','
                  << r.truncation_order << ',' << (r.terminated_exactly ? "true" : "false")
                  << '\n';
    } else {
        std::cout << text_eval(r);
    }
}

int run_eval(const std::string &num, const std::string &den, const std::string &x,
             double tol, int max_order, const std::string &via, OutputFormat format) {
    HyperSpec spec;
    spec.numerator = parse_complex_list(num);
    spec.denominator = parse_complex_list(den);
    spec.argument = parse_complex(x);
    TruncationPolicy policy = default_policy();
    policy.tol = tol;
    policy.max_order = max_order;

    EvalResult r;
    if (via == "direct") {
        r = eval_series(spec, policy);
    } else if (via == "euler-integral") {
        r = euler_integral(spec, cached_rule(RuleKind::legendre_01, 128), oracle_policy());
    } else if (via == "laplace-integral") {
        r = laplace_integral(spec, cached_rule(RuleKind::laguerre_0inf, 96), oracle_policy());
    } else if (via == "kummer") {
        // Kummer-type route: well conditioned where the direct series cancels
        TruncationPolicy route = identity_policy();
        route.tol = tol;
        r = th3_kummer_rhs(spec, route);
    } else if (via == "euler-transform") {
        // relaxed gate: the route itself only needs Re(x) < 1/2 and extends
        // the function beyond |x| < 1
        TruncationPolicy route = identity_policy();
        route.tol = tol;
        r = th4_euler_rhs(spec, route, true);
    } else {
        throw DomainError("unknown --via route: " + via);
    }
    print_eval(r, format);
    return kExitPass;
}

int run_check(const std::string &theorem_name_arg, const std::string &num,
              const std::string &den, const std::string &x, const std::string &y, double tol,
              bool relaxed, OutputFormat format) {
    Theorem theorem = theorem_from_name(theorem_name_arg);
    TruncationPolicy policy = identity_policy();
    IdentityReport rep;
    int p = 0;
    if (theorem == Theorem::T1 || theorem == Theorem::T2) {
        AdditionInput in;
        in.base.numerator = parse_complex_list(num);
        in.base.denominator = parse_complex_list(den);
        std::size_t nd = in.base.denominator.size();
        std::size_t expect_num = theorem == Theorem::T1 ? nd : nd + 1;
        if (nd < 1 || in.base.numerator.size() != expect_num)
            throw DomainError(theorem == Theorem::T1
                                  ? "t1 needs matching numerator/denominator lists (pFp)"
                                  : "t2 needs one extra numerator (p+1Fp)");
        in.x = parse_complex(x);
        if (y.empty())
            throw DomainError("--theorem t1/t2 requires --y");
        in.y = parse_complex(y);
        p = static_cast<int>(nd);
        rep = verify(theorem, in, policy, tol, relaxed);
    } else {
        HyperSpec spec;
        spec.numerator = parse_complex_list(num);
        spec.denominator = parse_complex_list(den);
        std::size_t nd = spec.denominator.size();
        std::size_t expect_num = theorem == Theorem::T3 ? nd : nd + 1;
        if (nd < 2 || spec.numerator.size() != expect_num)
            throw DomainError(theorem == Theorem::T3
                                  ? "t3 needs matching lists of length p+1 (p+1Fp+1)"
                                  : "t4 needs one extra numerator (p+2Fp+1)");
        spec.argument = parse_complex(x);
        p = static_cast<int>(nd) - 1;
        rep = verify(theorem, spec, policy, tol, relaxed);
    }

    if (format == OutputFormat::json)
        std::cout << to_json(rep).dump(2) << '\n';
    else if (format == OutputFormat::csv)
        std::cout << csv_header() << '\n' << csv_row(rep, 0, p, 0.0) << '\n';
    else
        std::cout << text_report(rep);

    if (!rep.domain_ok) {
        std::cerr << "domain error: " << rep.diagnostic << '\n';
        return kExitDomain;
    }
    if (!rep.diagnostic.empty()) {
        std::cerr << "evaluation error: " << rep.diagnostic << '\n';
        return kExitNumerical;
    }
    return rep.passed ? kExitPass : kExitFail;
}

int run_rules(const std::string &kind_name, int order) {
    RuleKind kind;
    if (kind_name == "legendre-01" || kind_name == "legendre_01")
        kind = RuleKind::legendre_01;
    else if (kind_name == "laguerre-0inf" || kind_name == "laguerre_0inf")
        kind = RuleKind::laguerre_0inf;
    else
        throw DomainError("unknown rule kind: " + kind_name);
    QuadratureRule rule = build_rule(kind, order);
    std::cout << "# " << kind_name << " order " << order << '\n';
    std::cout << "# abscissa weight\n";
    for (const auto &node : rule.nodes)
        std::cout << format_dd(node.abscissa) << ' ' << format_dd(node.weight) << '\n';
    return kExitPass;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"generalized hypergeometric evaluation and identity verification"};
    app.require_subcommand(1);
    std::string format_name = "text";
    app.add_option("--format", format_name, "output format: json|csv|text")
        ->capture_default_str();

    // eval
    auto *eval = app.add_subcommand("eval", "evaluate pFq at an argument");
    std::string num, den, x, y;
    double tol = default_policy().tol;
    int max_order = default_policy().max_order;
    std::string via = "direct";
    eval->add_option("--num", num, "numerator parameters a1,a2,... (complex as re+imi)");
    eval->add_option("--den", den, "denominator parameters b1,b2,...");
    eval->add_option("--x", x, "argument (re, re,im or re+imi)")->required();
    eval->add_option("--tol", tol, "truncation tolerance")->capture_default_str();
    eval->add_option("--max-order", max_order, "maximum series order")->capture_default_str();
    eval->add_option("--via", via,
                     "route: direct|euler-integral|laplace-integral|kummer|euler-transform")
        ->capture_default_str();

    // check
    auto *check = app.add_subcommand("check", "verify one identity instance");
    std::string theorem;
    double check_tol = 1e-10;
    bool relaxed = false;
    check->add_option("--theorem", theorem, "t1|t2|t3|t4")->required();
    check->add_option("--num", num, "parameters as in eval");
    check->add_option("--den", den, "parameters as in eval");
    check->add_option("--x", x, "argument x")->required();
    check->add_option("--y", y, "argument y (t1/t2)");
    check->add_option("--tol", check_tol, "verification tolerance")->capture_default_str();
    check->add_flag("--relaxed-domain", relaxed, "gate t2 on |y| < |1-x| instead of |y| < |x|");

    // sweep
    auto *sweep = app.add_subcommand("sweep", "seeded randomized verification sweep");
    SweepConfig config;
    std::string sweep_theorem = "t1";
    std::uint64_t seed = 0;
    sweep->add_option("--theorem", sweep_theorem, "t1|t2|t3|t4")->capture_default_str();
    sweep->add_option("--p", config.p, "number of outer parameter pairs")
        ->capture_default_str();
    sweep->add_option("--draws", config.draws, "number of random draws")
        ->capture_default_str();
    sweep->add_option("--seed", seed, "PRNG seed (SplitMix64 streams)")
        ->capture_default_str();
    sweep->add_option("--tol", config.tol, "verification tolerance")->capture_default_str();
    sweep->add_option("--re-min", config.box.re_min, "parameter box")->capture_default_str();
    sweep->add_option("--re-max", config.box.re_max, "parameter box")->capture_default_str();
    sweep->add_option("--im-min", config.box.im_min, "parameter box")->capture_default_str();
    sweep->add_option("--im-max", config.box.im_max, "parameter box")->capture_default_str();
    sweep->add_flag("--relaxed-domain", config.relaxed_domain, "relaxed t2/t4 gates");
    sweep->add_option("--threads", config.threads, "worker threads")->capture_default_str();
    std::string config_path;
    sweep->add_option("--config", config_path,
                      "flat key=value config file mirroring these flags");

    // rules
    auto *rules = app.add_subcommand("rules", "print quadrature nodes and weights");
    std::string kind_name = "legendre-01";
    int order = 16;
    rules->add_option("--kind", kind_name, "legendre-01|laguerre-0inf")
        ->capture_default_str();
    rules->add_option("--order", order, "rule order")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitPass : kExitDomain;
    }

    try {
        OutputFormat format = parse_format(format_name);
        if (eval->parsed())
            return run_eval(num, den, x, tol, max_order, via, format);
        if (check->parsed())
            return run_check(theorem, num, den, x, y, check_tol, relaxed, format);
        if (sweep->parsed()) {
            if (!config_path.empty())
                apply_sweep_config(config_path, app, *sweep, config, sweep_theorem, seed,
                                   format_name);
            config.theorem = theorem_from_name(sweep_theorem);
            config.seed = seed;
            config.format = parse_format(format_name);
            SweepResult result = run_sweep(config);
            std::cout << render_sweep(config, result);
            return result.failures == 0 ? kExitPass : kExitFail;
        }
        if (rules->parsed())
            return run_rules(kind_name, order);
    } catch (const ConvergenceError &e) {
        std::cerr << "nonconvergence: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const OverflowError &e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError &e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitDomain;
}
