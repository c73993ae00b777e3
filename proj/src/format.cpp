// SPDX-License-Identifier: Apache-2.0
#include "pfq/format.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pfq {

namespace {

constexpr int kSigDigits = 20;

DDouble pow10_dd(int k) {
    bool invert = k < 0;
    unsigned m = invert ? static_cast<unsigned>(-(long long)k) : static_cast<unsigned>(k);
    DDouble base(10.0);
    DDouble r(1.0);
    while (m) {
        if (m & 1)
            r *= base;
        base *= base;
        m >>= 1;
    }
    return invert ? DDouble(1.0) / r : r;
}

std::string zero_string() {
    std::string s = "0.";
    s.append(kSigDigits - 1, '0');
    s += "e+00";
    return s;
}

} // namespace

std::string format_dd(DDouble x) {
    if (!x.is_finite())
        return std::isnan(x.hi()) ? "nan" : (x.hi() > 0 ? "inf" : "-inf");
    bool neg = x.hi() < 0.0 || (x.hi() == 0.0 && x.lo() < 0.0);
    DDouble m = abs(x);
    if (m.hi() == 0.0)
        return zero_string();

    int e10 = static_cast<int>(std::floor(std::log10(m.hi())));
    if (e10 > 290)
        m = (m / pow10_dd(e10 - 290)) / pow10_dd(290);
    else if (e10 < -290)
        m = (m * pow10_dd(-e10 - 290)) * pow10_dd(290);
    else
        m = m / pow10_dd(e10);
    while (m >= DDouble(10.0)) {
        m = m / 10.0;
        ++e10;
    }
    while (m < DDouble(1.0)) {
        m = m * 10.0;
        --e10;
    }

    int digit[kSigDigits + 1];
    for (int k = 0; k <= kSigDigits; ++k) {
        int d = static_cast<int>(m.hi());
        if (d < 0)
            d = 0;
        if (d > 9)
            d = 9;
        while (d > 0 && m < DDouble(double(d)))
            --d;
        while (d < 9 && m >= DDouble(double(d + 1)))
            ++d;
        digit[k] = d;
        m = (m - DDouble(double(d))) * 10.0;
    }
    if (digit[kSigDigits] >= 5) {
        int k = kSigDigits - 1;
        while (k >= 0 && ++digit[k] == 10) {
            digit[k] = 0;
            --k;
        }
        if (k < 0) {
            digit[0] = 1;
            for (int i = 1; i < kSigDigits; ++i)
                digit[i] = 0;
            ++e10;
        }
    }

    std::string out;
    if (neg)
        out += '-';
    out += char('0' + digit[0]);
    out += '.';
    for (int k = 1; k < kSigDigits; ++k)
        out += char('0' + digit[k]);
    char exp_buf[8];
    std::snprintf(exp_buf, sizeof exp_buf, "e%+03d", e10);
    out += exp_buf;
    return out;
}

std::string format_complex_compact(const ComplexDD &z) {
    std::string s = format_dd(z.re());
    std::string im = format_dd(z.im());
    if (!im.empty() && im[0] == '-') {
        s += im;
    } else {
        s += '+';
        s += im;
    }
    s += 'i';
    return s;
}

nlohmann::json json_number(DDouble x) { return format_dd(x); }

nlohmann::json json_complex(const ComplexDD &z) {
    return nlohmann::json::array({format_dd(z.re()), format_dd(z.im())});
}

nlohmann::json to_json(const EvalResult &r) {
    nlohmann::json j;
    j["value"] = json_complex(r.value);
    j["abs_error_estimate"] = json_number(DDouble(r.abs_error_estimate));
    j["terms_used"] = r.terms_used;
    j["truncation_order"] = r.truncation_order;
    j["terminated_exactly"] = r.terminated_exactly;
    return j;
}

nlohmann::json to_json(const IdentityReport &r) {
    nlohmann::json j;
    j["theorem"] = theorem_name(r.theorem);
    j["lhs"] = to_json(r.lhs);
    j["rhs"] = to_json(r.rhs);
    j["abs_diff"] = json_number(DDouble(r.abs_diff));
    j["rel_diff"] = json_number(DDouble(r.rel_diff));
    j["domain_ok"] = r.domain_ok;
    j["passed"] = r.passed;
    j["relaxed_domain"] = r.relaxed_domain;
    j["experimental"] = r.experimental;
    j["diagnostic"] = r.diagnostic;
    nlohmann::json nums = nlohmann::json::array();
    for (const auto &a : r.numerator)
        nums.push_back(json_complex(a));
    nlohmann::json dens = nlohmann::json::array();
    for (const auto &b : r.denominator)
        dens.push_back(json_complex(b));
    j["numerator"] = nums;
    j["denominator"] = dens;
    j["x"] = json_complex(r.x);
    if (r.has_y)
        j["y"] = json_complex(r.y);
    return j;
}

std::string theorem_name(Theorem t) {
    switch (t) {
    case Theorem::T1: return "t1";
    case Theorem::T2: return "t2";
    case Theorem::T3: return "t3";
    case Theorem::T4: return "t4";
    }
    return "t1";
}

Theorem theorem_from_name(const std::string &name) {
    if (name == "t1" || name == "T1") return Theorem::T1;
    if (name == "t2" || name == "T2") return Theorem::T2;
    if (name == "t3" || name == "T3") return Theorem::T3;
    if (name == "t4" || name == "T4") return Theorem::T4;
    throw DomainError("unknown theorem name: " + name + " (expected t1|t2|t3|t4)");
}

std::string csv_header() {
    return "theorem,draw_index,p,parameters,x,y,lhs,rhs,abs_diff,rel_diff,domain_ok,"
           "passed,terms_lhs,terms_rhs,millis";
}

std::string csv_row(const IdentityReport &r, int draw_index, int p, double millis) {
    std::ostringstream os;
    os << theorem_name(r.theorem) << ',' << draw_index << ',' << p << ',';
    bool first = true;
    for (const auto &a : r.numerator) {
        if (!first)
            os << ';';
        os << format_complex_compact(a);
        first = false;
    }
    for (const auto &b : r.denominator) {
        os << ';' << format_complex_compact(b);
    }
    os << ',' << format_complex_compact(r.x) << ',';
    os << (r.has_y ? format_complex_compact(r.y) : std::string("-")) << ',';
    os << format_complex_compact(r.lhs.value) << ',' << format_complex_compact(r.rhs.value)
       << ',';
    os << format_dd(DDouble(r.abs_diff)) << ',' << format_dd(DDouble(r.rel_diff)) << ',';
    os << (r.domain_ok ? "true" : "false") << ',' << (r.passed ? "true" : "false") << ',';
    os << r.lhs.terms_used << ',' << r.rhs.terms_used << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", millis);
    os << buf;
    return os.str();
}

std::string text_eval(const EvalResult &r) {
    std::ostringstream os;
    os << "value            = " << format_complex_compact(r.value) << '\n';
    os << "error estimate   = " << format_dd(DDouble(r.abs_error_estimate)) << '\n';
    os << "terms used       = " << r.terms_used << '\n';
    os << "truncation order = " << r.truncation_order << '\n';
    os << "terminated exact = " << (r.terminated_exactly ? "yes" : "no") << '\n';
    return os.str();
}

std::string text_report(const IdentityReport &r) {
    std::ostringstream os;
    os << "theorem    : " << theorem_name(r.theorem);
    if (r.experimental)
        os << "  [experimental: relaxed domain]";
    os << '\n';
    os << "parameters : num = [";
    for (std::size_t i = 0; i < r.numerator.size(); ++i)
        os << (i ? ", " : "") << format_complex_compact(r.numerator[i]);
    os << "]\n             den = [";
    for (std::size_t i = 0; i < r.denominator.size(); ++i)
        os << (i ? ", " : "") << format_complex_compact(r.denominator[i]);
    os << "]\n";
    os << "x          : " << format_complex_compact(r.x) << '\n';
    if (r.has_y)
        os << "y          : " << format_complex_compact(r.y) << '\n';
    os << "domain_ok  : " << (r.domain_ok ? "true" : "false") << '\n';
    if (!r.diagnostic.empty())
        os << "diagnostic : " << r.diagnostic << '\n';
    if (r.domain_ok && r.diagnostic.empty()) {
        os << "lhs        : " << format_complex_compact(r.lhs.value) << "  ("
           << r.lhs.terms_used << " terms)\n";
        os << "rhs        : " << format_complex_compact(r.rhs.value) << "  ("
           << r.rhs.terms_used << " terms)\n";
        os << "abs_diff   : " << format_dd(DDouble(r.abs_diff)) << '\n';
        os << "rel_diff   : " << format_dd(DDouble(r.rel_diff)) << '\n';
    }
    os << "passed     : " << (r.passed ? "true" : "false") << '\n';
    return os.str();
}

} // namespace pfq
