// SPDX-License-Identifier: Apache-2.0
//
// Deterministic rendering of results: every numeric value is emitted as a
// 20-significant-digit scientific string (lowercase e), complex values as
// [re, im] pairs, JSON objects with canonically ordered keys.  Reports
// round-trip byte-for-byte through parse + re-serialize.
#pragma once

#include <string>

#include <json.hpp>

#include "pfq/identities.hpp"

namespace pfq {

/// 20 significant digits, scientific, lowercase e, sign on the exponent.
std::string format_dd(DDouble x);

/// "re+imi" / "re-imi" compact form (CSV and text).
std::string format_complex_compact(const ComplexDD &z);

nlohmann::json json_number(DDouble x);
nlohmann::json json_complex(const ComplexDD &z);
nlohmann::json to_json(const EvalResult &r);
nlohmann::json to_json(const IdentityReport &r);

std::string theorem_name(Theorem t);
Theorem theorem_from_name(const std::string &name);

/// Column header matching csv_row.
std::string csv_header();
std::string csv_row(const IdentityReport &r, int draw_index, int p, double millis);

std::string text_report(const IdentityReport &r);
std::string text_eval(const EvalResult &r);

} // namespace pfq
