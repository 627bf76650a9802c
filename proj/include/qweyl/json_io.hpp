#ifndef QWEYL_JSON_IO_HPP
#define QWEYL_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "qweyl/nondegeneracy.hpp"
#include "qweyl/positivity.hpp"
#include "qweyl/sl2.hpp"

namespace qweyl {

using json = nlohmann::json;

// complex <-> [re, im]
json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const LaurentPoly& p); // {"coeffs": [[k, re, im], ...]} ascending
LaurentPoly laurent_from_json(const json& j);

json to_json(const AlgebraElement& a); // {"components": [[i, <poly>], ...]}
AlgebraElement element_from_json(const json& j);

json to_json(const TraceSpec& spec);
TraceSpec trace_spec_from_json(const json& j);

json to_json(const WeightParams& wp);
WeightParams weight_from_json(const json& j);

json to_json(const GeneralTraceSpec& spec);
GeneralTraceSpec general_spec_from_json(const json& j);

json to_json(const GramReport& rep);
json to_json(const ConeMembershipReport& rep);
json to_json(const PositivityCertificate& cert);
json to_json(const NondegeneracyReport& rep);
json to_json(const RootShiftReport& rep);
json to_json(const Sl2ConeDescription& desc);

// Deterministic serialization: keys sorted (nlohmann objects iterate sorted),
// floating-point numbers printed with 17 significant digits.
std::string dump_deterministic(const json& j);

} // namespace qweyl

#endif
