#pragma once

#include <json.hpp>

#include "specdiv/divisors.hpp"
#include "specdiv/fqm.hpp"
#include "specdiv/invariants.hpp"
#include "specdiv/qeta.hpp"

namespace specdiv {

using Json = nlohmann::json;

// All parsers throw InvalidArgument on malformed input.

Json element_to_json(const FqmElement& g);
FqmElement element_from_json(const DiscriminantForm& form, const Json& j);

Json subgroup_to_json(const FqmSubgroup& H);
FqmSubgroup subgroup_from_json(const Json& j);

Json label_to_json(const CuspLabel& label);
CuspLabel label_from_json(const Json& j);

Json divisor_to_json(const BoundaryDivisor& d);
BoundaryDivisor divisor_from_json(const DiscriminantForm& form, const Json& j);

/// Rational-valued group algebra vectors as {"[w,x,y,z]": "p/q"}.
Json vector_to_json(const GroupAlgebraVector& v);

Json certificate_to_json(const SpecialCertificate& cert);

Json series_to_json(const PuiseuxSeries& s);

}  // namespace specdiv
