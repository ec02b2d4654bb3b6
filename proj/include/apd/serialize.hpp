#pragma once

#include <string>

#include "json.hpp"

#include "apd/antideriv.hpp"
#include "apd/oracle.hpp"
#include "apd/orbit.hpp"
#include "apd/padic.hpp"

namespace apd {

using ordered_json = nlohmann::ordered_json;

// Decimal-digit estimate of |unit| * p^exponent without materializing it.
std::string digits_estimate(const PSplit& v);

// Decimal string when the value fits the size guard, otherwise
// {"form": "a*p^(b*p^k)", "digits": "<estimate>"}.
ordered_json value_json(const PSplit& v);

ordered_json to_json(const StandardForm& f);  // {a, b, k, form, value|digits}
ordered_json to_json(const IncProfile& profile);
ordered_json to_json(const AntiSet& s);
ordered_json to_json(const ConstructionResult& r);
ordered_json to_json(const OrdSequence& seq);
ordered_json to_json(const OrbitClass& c);

}  // namespace apd
