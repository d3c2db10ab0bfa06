#pragma once

// JSON encodings for reports and configs. Group-ring elements are
// {label: coefficient} maps; polynomials over F_q are coefficient arrays
// low to high; places are "inf" or coefficient arrays.

#include <json.hpp>

#include "equitheta/cohomcheck.hpp"
#include "equitheta/fitting.hpp"
#include "equitheta/grpring.hpp"
#include "equitheta/lfun.hpp"

namespace equitheta::serialize {

using json = nlohmann::ordered_json;

json to_json(const grpring::IntElem& x);
json to_json(const grpring::RatElem& x);
json to_json(const grpring::ModElem& x);
json to_json(const grpring::IntPoly& f);
json to_json(const grpring::CyclotomicPoly& f);
json to_json(const ffq::FqPoly& f);
json to_json(const ffq::Place& v);
json to_json(const std::vector<ffq::Place>& s);
json to_json(const fitting::IdealFG& i);
json to_json(const fitting::PresentedModule& m);
json to_json(const lfun::LDataRequest& req);
json to_json(const lfun::ThetaPoly& th);
json to_json(const cohom::CohomologyPrediction& p);
json to_json(const cohom::CsReport& r);

grpring::IntElem int_elem_from_json(const grpring::GroupPtr& g, const json& j);
ffq::FqPoly poly_from_json(const ffq::PolyRing& ring, const json& j);
ffq::Place place_from_json(const ffq::PolyRing& ring, const json& j);
/// {kind: "carlitz"|"constant_field", q, m | r, S0, T0, Dmax, guard}
lfun::LDataRequest request_from_json(const json& j);

}  // namespace equitheta::serialize
