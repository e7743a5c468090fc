#pragma once

// Text and JSON formats shared by the CLI and the tests. Integers are
// written as decimal strings throughout.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lambdalab/adams.hpp"
#include "lambdalab/isoclass.hpp"
#include "lambdalab/symuniv.hpp"

namespace lambdalab::io {

using nlohmann::json;

/// "c0 + c1*x^1 + ..." in a univariate shape; "x" and "x^k" without a
/// coefficient, and "3*x" without an exponent, are accepted.
TruncPoly parse_poly(std::string_view text, const RingShape& shape);
/// Same text as TruncPoly::to_string for univariate shapes.
std::string format_poly(const TruncPoly& f);

/// {"[e1,e2]": "c", ...}
json poly_to_json(const TruncPoly& f);
TruncPoly poly_from_json(const json& j, const RingShape& shape);

json shape_to_json(const RingShape& shape);
RingShape shape_from_json(const json& j);

/// Family files. When the file names neither "primes" nor "primes_upto",
/// the active set is the primes up to `default_primes_upto`.
json family_to_json(const AdamsFamily& family);
AdamsFamily family_from_json(const json& j, long default_primes_upto = kDefaultPrimeBound);

json automorphism_to_json(const Automorphism& sigma);
Automorphism automorphism_from_json(const json& j, const RingShape& shape);

json iso_result_to_json(const IsoResult& r);
json report_to_json(const ValidationReport& r);

/// {"poly": [{"coeff": "...", "monomial": {"s1": 2, ...}}, ...]}
json sympoly_to_json(const SymPoly& f);

/// Integer from a JSON number or decimal string. Throws ParseError.
Integer integer_from_json(const json& j);

std::string verdict_name(Verdict v);

}  // namespace lambdalab::io
