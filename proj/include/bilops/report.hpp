#ifndef BILOPS_REPORT_HPP
#define BILOPS_REPORT_HPP

#include <json.hpp>

#include "bilops/catalog.hpp"
#include "bilops/solver.hpp"

namespace bilops {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j);

Json jet_vector_to_json(const JetVector& v);

Json fiber_to_json(const IrredFiber& f);

Json tensor_field_to_json(const TensorField& f);
TensorField tensor_field_from_json(const Json& j);

Json locus_to_json(const LocusDescription& locus);

/// Structural validation against the subset of JSON Schema the shipped
/// report.schema.json uses (type / required / properties / items / enum).
/// Returns an empty string on success, else the first violation.
std::string validate_against_schema(const Json& doc, const Json& schema);

/// The schema shipped in-repo (report.schema.json).
const char* report_schema_text();

}  // namespace bilops

#endif
