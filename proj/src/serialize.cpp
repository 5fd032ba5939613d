#include "qforms/serialize.hpp"

namespace qf {

Json field_to_json(const Field& f) {
  switch (f.kind) {
    case Field::Kind::Q: return "Q";
    case Field::Kind::R: return "R";
    default: return Json{{"Fp", static_cast<long long>(f.p)}};
  }
}

Field field_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Q") return Field::Q();
    if (s == "R") return Field::R();
    throw std::invalid_argument("unknown field tag '" + s + "'");
  }
  if (j.is_object() && j.contains("Fp")) {
    const Json& p = j.at("Fp");
    if (p.is_number_integer()) return Field::Fp(Int(p.get<long long>()));
    if (p.is_string()) return Field::Fp(Int(p.get<std::string>()));
  }
  throw std::invalid_argument("field must be \"Q\", \"R\" or {\"Fp\": p}");
}

Json form_to_json(const QuadraticForm& q) {
  Json out{{"field", field_to_json(q.field())}};
  if (q.is_diagonal()) {
    Json diag = Json::array();
    for (const auto& e : q.diagonal_entries()) diag.push_back(to_string(e));
    out["diagonal"] = diag;
  } else {
    auto vars = QuadraticForm::default_vars(q.dim());
    out["poly"] = q.to_polynomial(vars).str();
    out["vars"] = vars;
  }
  return out;
}

QuadraticForm form_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("form must be a JSON object");
  Field field = field_from_json(j.at("field"));
  const bool has_diag = j.contains("diagonal");
  const bool has_poly = j.contains("poly");
  if (has_diag == has_poly)
    throw std::invalid_argument("form needs exactly one of \"diagonal\" or \"poly\"");
  if (has_diag) {
    std::vector<Rational> entries;
    for (const auto& e : j.at("diagonal")) {
      if (e.is_number_integer())
        entries.push_back(Rational(Int(e.get<long long>())));
      else
        entries.push_back(parse_rational(e.get<std::string>()));
    }
    if (entries.empty()) throw std::invalid_argument("diagonal must be nonempty");
    return QuadraticForm::diagonal(field, entries);
  }
  std::vector<std::string> vars;
  if (j.contains("vars")) {
    for (const auto& v : j.at("vars")) vars.push_back(v.get<std::string>());
  } else {
    throw std::invalid_argument("\"poly\" input needs \"vars\"");
  }
  Polynomial p = Polynomial::parse(j.at("poly").get<std::string>(), vars);
  return QuadraticForm::from_polynomial(p, field);
}

Json invariants_to_json(const FormInvariants& inv) {
  Json out{{"dimension", inv.dimension},
           {"radical_dimension", inv.radical_dimension},
           {"det", inv.det.rep.str()},
           {"disc", inv.disc.rep.str()},
           {"field", field_to_json(inv.field)}};
  if (inv.signature)
    out["signature"] = Json::array({inv.signature->first, inv.signature->second});
  else
    out["signature"] = nullptr;
  Json hasse = Json::array();
  for (const auto& [v, s] : inv.hasse) hasse.push_back(v.str());
  out["hasse_minus_one"] = hasse;
  return out;
}

Json i1_to_json(const FirstWittIndexResult& r) {
  Json out;
  out["determined"] = r.determined();
  out["value"] = r.determined() ? Json(*r.value) : Json(nullptr);
  out["justification"] = r.justification;
  return out;
}

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "undetermined";
  }
}

Json neighbor_to_json(const NeighborReport& rep) {
  Json out{{"is_neighbor", tri_name(rep.is_neighbor)},
           {"is_special", tri_name(rep.is_special)},
           {"trace", rep.trace}};
  out["fold"] = rep.fold ? Json(*rep.fold) : Json(nullptr);
  if (rep.is_neighbor == Tri::Yes) {
    Json alpha = Json::array();
    for (const auto& a : rep.alpha_params) alpha.push_back(to_string(a));
    Json prime = Json::array();
    for (const auto& a : rep.alpha_prime) prime.push_back(to_string(a));
    out["alpha_params"] = alpha;
    out["alpha_prime"] = prime;
    out["scalar"] = to_string(*rep.scalar);
    out["similarity"] = to_string(*rep.similarity);
  }
  return out;
}

Json polymap_to_json(const PolyMap& m) {
  Json comps = Json::array();
  for (const auto& c : m.components) comps.push_back(c.str());
  Json out{{"components", comps}, {"source_vars", m.source_vars}};
  out["denominator"] = m.denominator ? Json(m.denominator->str()) : Json(nullptr);
  return out;
}

Json family_to_json(const AutomorphismFamily& fam) {
  Json out{{"case", fam.kind == FamilyCase::Radical ? "Radical" : "SiegelTransvection"},
           {"parameter", fam.parameter},
           {"map", polymap_to_json(fam.family)}};
  Json x = Json::array();
  for (const auto& c : fam.x) x.push_back(c.str());
  out["x"] = x;
  if (fam.y) {
    Json y = Json::array();
    for (const auto& c : *fam.y) y.push_back(c.str());
    out["y"] = y;
  } else {
    out["y"] = nullptr;
  }
  return out;
}

std::string ruledness_name(Ruledness v) {
  switch (v) {
    case Ruledness::Ruled: return "Ruled";
    case Ruledness::NotRuled: return "NotRuled";
    case Ruledness::IsotropicRational: return "IsotropicRational";
    default: return "Undetermined";
  }
}

std::string group_kind_name(GroupKind v) {
  switch (v) {
    case GroupKind::InfiniteDimensional: return "InfiniteDimensional";
    case GroupKind::PGO_W_in_V: return "PGO_W_in_V";
    case GroupKind::PGO_V: return "PGO_V";
    case GroupKind::Unknown: return "Unknown";
    default: return "Undetermined";
  }
}

}  // namespace qf
