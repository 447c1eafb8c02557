#pragma once

#include <json.hpp>

#include "rsz/ring.hpp"

namespace rsz {

using Json = nlohmann::json;

// Numbers are written as exact decimal strings.
Json to_json(const CycScalar& s);
Json to_json(const LaurentPoly& f);
Json to_json(const LFactorDescriptor& l);
Json to_json(const ZetaValue& z);
Json to_json(const RingSpec& r);

CycScalar scalar_from_json(const Json& j);
LaurentPoly poly_from_json(const Json& j);
LFactorDescriptor lfactor_from_json(const Json& j);
ZetaValue zeta_value_from_json(const Json& j);
RingSpec ring_from_json(const Json& j);

// Accepts a JSON string or integer holding an exact number.
long json_long(const Json& j);
Rational json_rational(const Json& j);

}  // namespace rsz
