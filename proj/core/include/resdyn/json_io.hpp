#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "resdyn/conjugacy.hpp"
#include "resdyn/factored_ideal.hpp"
#include "resdyn/moduli.hpp"
#include "resdyn/morphism.hpp"
#include "resdyn/reduction.hpp"
#include "resdyn/resultant.hpp"

namespace resdyn {

// Ordered so that emitted key order is fixed.
using Json = nlohmann::ordered_json;

// Rationals travel as "a/b" (or "a") strings.
Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j);

// {"p": e} with decimal string keys, primes ascending.
Json ideal_to_json(const FactoredIdeal& ideal);
FactoredIdeal ideal_from_json(const Json& j);

// {"n": int, "d": int, "forms": [[["i0,...,in", "a/b"], ...], ...]}; only
// nonzero terms are emitted, in lexicographic (basis) order. Parsing accepts
// any order but rejects duplicates and wrong weights with SchemaError.
Json morphism_to_json(const MorphismModel& phi);
MorphismModel morphism_from_json(const Json& j);

Json linear_map_to_json(const LinearMap& f);
LinearMap linear_map_from_json(const Json& j);

// Rounded to 12 significant digits.
Json height_to_json(double height);

Json resultant_to_json(const ResultantValue& res);
Json reduction_report_to_json(const ReductionReport& report);
Json moduli_point_to_json(const ModuliPoint& point);
Json verdict_to_json(const ConjugacyVerdict& verdict);

// JSON schemas for every payload the CLI reads or writes.
Json payload_schemas();

}  // namespace resdyn
