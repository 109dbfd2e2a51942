#pragma once

#include <string>
#include <vector>

#include "gvf/divisors.hpp"
#include "gvf/feasibility.hpp"
#include "gvf/search.hpp"
#include "json.hpp"

namespace gvf {

using Json = nlohmann::ordered_json;

// ---- carriers and elements -------------------------------------------------

// {"type":"Q"} | {"type":"quadratic","d":-1}
// | {"type":"number_field","min_poly":[-2,0,1]} | {"type":"function_field","p":7}
Json carrier_to_json(const CarrierPtr& k);
CarrierPtr carrier_from_json(const Json& j);

// Rationals are strings ("12/35"); quadratic elements {"a":"1/2","b":"3"};
// number-field elements {"coeffs":["0","1"]}; function-field elements either
// {"num":"t^3+2*t","den":"t+1"} or a plain expression string in t.
Json elem_to_json(const FieldElem& x);
FieldElem elem_from_json(const CarrierPtr& k, const Json& j);
std::vector<FieldElem> elems_from_json(const CarrierPtr& k, const Json& j);

// ---- scalars -----------------------------------------------------------

// Exact rational from a JSON string or integer ("3/4", "0.25", "1e-6", 7).
// Floating-point JSON literals are rejected: they are not exact.
Rat rat_from_json(const Json& j);
Int int_from_json(const Json& j);

// Linear-in-logarithms expression: rational multiples of log(n) plus a
// rational constant, e.g. "log(2)", "2*log(2) - log(3)", "1/2", "0.35".
LogLin parse_target(const std::string& text);
// Accepts a string (parse_target) or an integer/rational constant.
LogLin target_from_json(const Json& j);

// ---- divisors, templates, points ----------------------------------------

// {"generators":[elem,...], "term":"min(x1,x2)"}
LatticeDivisor divisor_from_json(const CarrierPtr& k, const Json& j);
Json divisor_to_json(const LatticeDivisor& d);

// {"functions":["y","1-y"], "term":"min(x1,x2,0)"}
HeightTemplate template_from_json(const Json& j);
Json template_to_json(const HeightTemplate& t);

// Coordinates object {"y":"2/3", "z":{"a":"1","b":"1"}} over a fixed carrier.
PointSpec point_from_json(const CarrierPtr& k, const Json& j);
Json point_to_json(const PointSpec& x);

// ---- instances -----------------------------------------------------------

// {"field":..., "generators":[...],
//  "divisors":[{"term":"x1","target":"log(2)"},...],
//  "atoms":"places" | [{"u":["1","0"],"class":"finite","p":2,"label":"..."}],
//  "eps":"1/1000000"}
// When atoms are omitted (or given as "places") they are derived from the
// support places of the generators at the given precision.
FeasibilityInstance feasibility_from_json(const Json& j, long prec,
                                          CarrierPtr* carrier_out = nullptr);

// {"class":"rational"|"quadratic"|"cyclotomic"|"custom",
//  "bound":N, "ds":[...], "max_order":N, "min_poly":[...]}
SearchSpace space_from_json(const Json& j);

// {"space":..., "constraints":[{"functions":[...],"term":...,"target":...}],
//  "equations":[...], "inequations":[...], "eps":..., "mode":"exhaustive",
//  "seed":N, "threads":N}
SearchProblem search_from_json(const Json& j);

// {"space":..., "objective":{"functions":[...],"term":...},
//  "equations":[...], "exclusions":[...], "eps":..., "with_lp":true,
//  "seed":N, "threads":N}
ZetaProblem zeta_from_json(const Json& j);

// ---- results --------------------------------------------------------------

// {"exact":true,"value":"log(2)","mid":...,"rad":...}
Json value_to_json(const GvfValue& v, long prec);

// ---- files ---------------------------------------------------------------

Json load_json_file(const std::string& path);

}  // namespace gvf
