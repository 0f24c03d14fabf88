#pragma once

#include <nlohmann/json.hpp>

#include "bdq/alternating.hpp"
#include "bdq/bergman.hpp"
#include "bdq/fedosov.hpp"
#include "bdq/poly.hpp"
#include "bdq/ratfunc.hpp"

// Canonical JSON forms. Rationals are "p/q" strings and object keys are
// sorted, so equal values serialize to identical bytes.
namespace bdq::io {

using nlohmann::json;

json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

// {"vars": [...], "conj": [...], "terms": [{"exp": [...], "re": "p/q", "im": "p/q"}]}
json to_json(const Poly& p);
Poly poly_from_json(const json& j);

// {"num": poly, "den": [{"factor": poly, "power": k}]}
json to_json(const RatFunc& f);
RatFunc ratfunc_from_json(const json& j);

// {"dim": d, "terms": [{"indices": [...], "coeff": ratfunc}]}
json to_json(const Alternating& a);

json to_json(const bt::AlphaRational& a);

// {"k": k, "terms": [{"left_word": [...], "right_word": [...], "coeff": ratfunc}]}
json to_json(const fq::Bidifferential& b, int k);

}  // namespace bdq::io
