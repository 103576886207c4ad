#pragma once

// JSON schemas shared by the CLI and the corpus runner. Rationals are always
// written as "p/q" strings; integers and "p" strings are accepted on input.

#include <string>

#include "json.hpp"

#include "chowkit/chow_curves.hpp"
#include "chowkit/curve_model.hpp"
#include "chowkit/hm_weights.hpp"
#include "chowkit/polynomial.hpp"
#include "chowkit/quotient_sing.hpp"
#include "chowkit/rational.hpp"
#include "chowkit/stability_energy.hpp"

namespace chowkit::io {

using nlohmann::json;

Rational rational_from_json(const json& j);
json to_json(const Rational& r);

/// curve/v1
NodalCurve curve_from_json(const json& j);
json curve_to_json(const NodalCurve& curve);

json multidegree_to_json(const NodalCurve& curve, const Multidegree& m);
json verdict_to_json(const NodalCurve& curve, const StabilityVerdict& v);

/// Family intersection numbers; see README for the field names.
FamilyIntersections family_from_json(const json& j);

/// Characters plus section data.
TorusProblem torus_from_json(const json& j);
FamilySection section_from_json(const json& j);
json polynomial_to_json(const Polynomial& p);

json read_json_file(const std::string& path);

}  // namespace chowkit::io
