#pragma once

#include "qforms/autgroup.hpp"
#include "qforms/isotropy.hpp"
#include "qforms/pfister.hpp"
#include "qforms/qform.hpp"
#include "qforms/ruledness.hpp"

#include <json.hpp>

namespace qf {

using Json = nlohmann::json;

/// Form encoding shared by the CLI, batch files and the python module:
///   {"field": "Q" | "R" | {"Fp": p}, "diagonal": ["1","-2","7"]}
///   {"field": ..., "poly": "<expression>", "vars": ["x1","x2",...]}
/// Rationals travel as decimal strings "p/q".
Json field_to_json(const Field& f);
Field field_from_json(const Json& j);
Json form_to_json(const QuadraticForm& q);
QuadraticForm form_from_json(const Json& j);

Json invariants_to_json(const FormInvariants& inv);
Json i1_to_json(const FirstWittIndexResult& r);
Json neighbor_to_json(const NeighborReport& rep);
Json family_to_json(const AutomorphismFamily& fam);
Json polymap_to_json(const PolyMap& m);

std::string ruledness_name(Ruledness v);
std::string group_kind_name(GroupKind v);
std::string tri_name(Tri t);

}  // namespace qf
