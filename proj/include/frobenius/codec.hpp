#pragma once

#include <json.hpp>
#include <string>

#include "frobenius/poly.hpp"

namespace frob {

using json = nlohmann::json;

json fraction_to_json(const Fraction& f);
Fraction fraction_from_json(const json& j, const std::string& path);

json coeff_to_json(const CoeffElem& c);
CoeffElem coeff_from_json(const json& j, const Ring& ring, const std::string& path);

// List of {"coeff", "exp"} terms sorted by exponent vector.  In a ring with a
// D_B variable, exponent vectors one shorter than nvars are padded with 0.
json poly_to_json(const GradedPoly& p);
GradedPoly poly_from_json(const json& j, const Ring& ring, const std::string& path);

}  // namespace frob
