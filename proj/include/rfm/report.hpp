#pragma once

// JSON forms of library values. Objects use sorted keys; integers that do
// not fit in 64 bits are written as decimal strings.

#include <json.hpp>

#include "rfm/classify.hpp"
#include "rfm/dsl.hpp"
#include "rfm/presets.hpp"
#include "rfm/reeb.hpp"
#include "rfm/surgery.hpp"

namespace rfm {

using Json = nlohmann::json;

Json to_json(const BigInt& v);
Json to_json(const Manifold& e);
Json to_json(const FoldEvent& ev);
Json to_json(const Descriptor& d);
Json to_json(const MorseTrace& t);
Json to_json(const HomologyProfile& h);
Json to_json(const ComponentForest& f);
Json to_json(const ReebComplex& r);
Json to_json(const Prop1Report& r);
Json to_json(const ClassificationResult& r);
Json to_json(const Dim5Result& r);
Json to_json(const Preset& p);
Json to_json(const Diagnostic& d);
Json to_json(const ValidationReport& r);

/// "H_0 = Z, H_1 = 0, H_2 = Z^2 + Z/2"
std::string homology_text(const HomologyProfile& h);

/// Graphviz drawing of L. Capped leaves are double circles, free leaves boxes.
std::string forest_dot(const Descriptor& d, const ComponentForest& f);

}  // namespace rfm
