#include "qforms/reports.hpp"

#include "qforms/verify.hpp"

#include <typeinfo>

namespace qf::reports {

namespace {

Json base(const std::string& subcommand) {
  return Json{{"schema", kSchemaVersion}, {"subcommand", subcommand}};
}

Json rational_list(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json ruled_payload(const RuledVerdict& verdict) {
  Json out{{"verdict", ruledness_name(verdict.verdict)}, {"trace", verdict.trace}};
  out["i1"] = verdict.i1.justification.empty() && !verdict.i1.determined()
                  ? Json(nullptr)
                  : i1_to_json(verdict.i1);
  if (verdict.divisibility) {
    out["certificate"] = Json{{"kind", "binary_divisibility"},
                              {"binary_class", verdict.divisibility->binary_class.rep.str()},
                              {"cofactor", rational_list(verdict.divisibility->cofactor)}};
  } else if (verdict.neighbor && verdict.neighbor->is_neighbor == Tri::Yes) {
    Json cert = neighbor_to_json(*verdict.neighbor);
    cert["kind"] = "special_neighbor";
    out["certificate"] = cert;
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

}  // namespace

Json analyze(const QuadraticForm& q) {
  Json out = base("analyze");
  out["input"] = form_to_json(q);
  out["invariants"] = invariants_to_json(invariants(q));
  return out;
}

Json isotropy(const QuadraticForm& q, int height_bound) {
  Json out = base("isotropy");
  out["input"] = form_to_json(q);
  out["height_bound"] = height_bound;
  out["isotropic"] = is_isotropic(q);
  auto witness = isotropic_witness(q, height_bound);
  if (witness) {
    Json w = Json::array();
    for (const auto& c : *witness) w.push_back(c.str());
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json witt(const QuadraticForm& q) {
  Json out = base("witt");
  out["input"] = form_to_json(q);
  WittDecomposition d = witt_decompose(q);
  out["witt_index"] = d.witt_index;
  out["radical_dimension"] = d.radical_dimension;
  out["anisotropic_part"] = invariants_to_json(d.anisotropic);
  return out;
}

Json first_witt(const QuadraticForm& q) {
  Json out = base("i1");
  out["input"] = form_to_json(q);
  out["i1"] = i1_to_json(first_witt_index(q));
  return out;
}

Json ruled(const QuadraticForm& q) {
  Json out = base("ruled");
  out["input"] = form_to_json(q);
  out.update(ruled_payload(classify_ruledness(q)));
  return out;
}

Json sphere_ruled(int n) {
  Json out = base("sphere-ruled");
  out["n"] = n;
  out.update(ruled_payload(sphere_quadric_ruledness(n)));
  return out;
}

namespace {

Json group_payload(const GroupVerdict& v, int degree, const AffineQuadric* X) {
  Json out{{"verdict", group_kind_name(v.verdict)}, {"trace", v.trace}};
  out["named_group"] = v.named_group ? Json(*v.named_group) : Json(nullptr);
  out["i1"] = v.i1 ? i1_to_json(*v.i1) : Json(nullptr);
  out["family"] = v.witness_family ? family_to_json(*v.witness_family) : Json(nullptr);
  if (v.witness_family && X && degree > 0) {
    Json basis = Json::array();
    for (const auto& h : invariant_basis(*X, *v.witness_family, degree))
      basis.push_back(h.str());
    out["invariant_basis"] = Json{{"degree", degree}, {"basis", basis}};
  }
  return out;
}

}  // namespace

Json aut_affine(const Polynomial& f, const Field& field, int height_bound, int degree) {
  Json out = base("aut");
  AffineQuadric X = AffineQuadric::from_polynomial(f, field);
  out["input"] = Json{{"field", field_to_json(field)},
                      {"poly", f.str()},
                      {"vars", f.variables()},
                      {"complement", false}};
  GroupVerdict v = group_verdict(X, height_bound);
  out.update(group_payload(v, degree, &X));
  return out;
}

Json aut_complement(const QuadraticForm& q, int height_bound) {
  Json out = base("aut");
  Json input = form_to_json(q);
  input["complement"] = true;
  out["input"] = input;
  GroupVerdict v = group_verdict_complement(q, height_bound);
  out.update(group_payload(v, 0, nullptr));
  return out;
}

Json pfister_build(const Field& field, const std::vector<Rational>& params) {
  Json out = base("pfister-build");
  PfisterForm P = pfister(field, params);
  out["input"] = Json{{"field", field_to_json(field)}, {"params", rational_list(params)}};
  out["fold"] = P.fold;
  out["diagonal"] = rational_list(P.form.diagonal_entries());
  out["invariants"] = invariants_to_json(invariants(P.form));
  return out;
}

Json pfister_multiply(int fold, const std::vector<Rational>& params, bool symbolic) {
  Json out = base("pfister-multiply");
  CdMultiplication m =
      symbolic ? cayley_dickson_multiply(fold) : cayley_dickson_multiply(fold, params);
  out["input"] = Json{{"fold", fold},
                      {"symbolic", symbolic},
                      {"params", symbolic ? Json(m.param_vars) : rational_list(params)}};
  out["map"] = polymap_to_json(m.map);
  out["certificate_zero"] = m.certificate.is_zero();
  return out;
}

Json pfister_neighbor(const QuadraticForm& q) {
  Json out = base("pfister-neighbor");
  out["input"] = form_to_json(q);
  out["report"] = neighbor_to_json(neighbor_analysis(q));
  return out;
}

Json pfister_hopf(int fold) {
  Json out = base("pfister-hopf");
  HopfMap h = hopf_map(fold);
  out["input"] = Json{{"fold", fold}};
  out["map"] = polymap_to_json(h.map);
  out["certificate_zero"] = h.certificate.is_zero();
  const int s = 1 << (fold + 1);
  out["spheres"] = "S^" + std::to_string(s - 1) + " -> S^" + std::to_string(s / 2);
  return out;
}

Json map_certificate(int fold, int p1_dim, int r, bool symbolic,
                     const std::vector<Rational>& params,
                     const std::vector<Rational>& scalars) {
  Json out = base("map");
  RationalMapCertificate cert;
  if (symbolic) {
    cert = ahmad_ohm_map(fold, p1_dim, r);
  } else {
    PfisterForm P = pfister(Field::Q(), params);
    cert = ahmad_ohm_map(P, p1_dim, scalars);
  }
  out["input"] = Json{{"fold", fold},
                      {"p1_dim", p1_dim},
                      {"r", r},
                      {"symbolic", symbolic},
                      {"params", symbolic ? Json(nullptr) : rational_list(params)},
                      {"scalars", symbolic ? Json(nullptr) : rational_list(scalars)}};
  out["map"] = polymap_to_json(cert.map);
  out["identity_zero"] = cert.identity.is_zero();
  out["ruled_by_map"] = cert.ruled_by_map;
  out["source_quadric"] = cert.source_quadric.str();
  out["target_quadric"] = cert.target_quadric.str();
  if (cert.source_form) out["source_form"] = form_to_json(*cert.source_form);
  if (cert.target_form) out["target_form"] = form_to_json(*cert.target_form);
  return out;
}

Json verify_suite(const std::string& suite) {
  Json out = base("verify");
  out["input"] = Json{{"suite", suite}};
  std::vector<verify::Check> checks;
  if (suite == "identities")
    checks = verify::identities_suite();
  else if (suite == "oracle")
    checks = verify::oracle_suite();
  else
    throw std::invalid_argument("unknown suite '" + suite + "' (identities|oracle)");
  Json list = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    Json item{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    list.push_back(item);
    all = all && c.pass;
  }
  out["checks"] = list;
  out["all_pass"] = all;
  return out;
}

Json error_report(const std::string& type, const std::string& message, int exit_code) {
  return Json{{"schema", kSchemaVersion},
              {"error", Json{{"type", type}, {"message", message}}},
              {"exit", exit_code}};
}

Json error_from_exception(const std::exception& e) {
  auto name_of = [&]() -> std::pair<std::string, int> {
    if (dynamic_cast<const BoundExceeded*>(&e)) return {"BoundExceeded", 2};
    if (dynamic_cast<const WitnessNotFound*>(&e)) return {"WitnessNotFound", 2};
    if (dynamic_cast<const SyntaxError*>(&e)) return {"SyntaxError", 1};
    if (dynamic_cast<const UnknownVariable*>(&e)) return {"UnknownVariable", 1};
    if (dynamic_cast<const MissingAssignment*>(&e)) return {"MissingAssignment", 1};
    if (dynamic_cast<const ZeroInput*>(&e)) return {"ZeroInput", 1};
    if (dynamic_cast<const ZeroScalar*>(&e)) return {"ZeroScalar", 1};
    if (dynamic_cast<const ZeroParameter*>(&e)) return {"ZeroParameter", 1};
    if (dynamic_cast<const FoldOutOfRange*>(&e)) return {"FoldOutOfRange", 1};
    if (dynamic_cast<const OddDimension*>(&e)) return {"OddDimension", 1};
    if (dynamic_cast<const IsotropicInput*>(&e)) return {"IsotropicInput", 1};
    if (dynamic_cast<const AnisotropicPart*>(&e)) return {"AnisotropicPart", 1};
    if (dynamic_cast<const DimensionTooSmall*>(&e)) return {"DimensionTooSmall", 1};
    if (dynamic_cast<const NotInvariant*>(&e)) return {"NotInvariant", 1};
    if (dynamic_cast<const UnsupportedField*>(&e)) return {"UnsupportedField", 1};
    if (dynamic_cast<const Json::exception*>(&e)) return {"JsonError", 1};
    if (dynamic_cast<const std::invalid_argument*>(&e)) return {"InvalidArgument", 1};
    if (dynamic_cast<const std::domain_error*>(&e)) return {"DomainError", 1};
    return {"InternalError", 1};
  };
  auto [type, code] = name_of();
  return error_report(type, e.what(), code);
}

int exit_code_of(const Json& report) {
  if (report.contains("error")) return report.value("exit", 1);
  return 0;
}

}  // namespace qf::reports
