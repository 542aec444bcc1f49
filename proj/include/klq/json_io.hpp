#pragma once

// JSON encodings shared by the cache and the CLI. Integers that do not fit
// in 64 bits are written as decimal strings; Laurent polynomials are lists
// of [exponent, coefficient] pairs sorted by exponent; words are 1-based.

#include <string>

#include "json.hpp"
#include "klq/coxeter.hpp"
#include "klq/laurent.hpp"

namespace klq {

nlohmann::json integer_to_json(const Integer& n);
/// Accepts a JSON integer or a decimal string. Throws InputError naming `where`.
Integer integer_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json laurent_to_json(const LaurentPoly& p);
/// Rejects repeated exponents and zero coefficients (non-canonical input).
LaurentPoly laurent_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json word_to_json(const Word& w);
/// Element named by a 1-based word; must be reduced.
ElemId element_from_json(const GroupTable& g, const nlohmann::json& j, const std::string& where);

}  // namespace klq
