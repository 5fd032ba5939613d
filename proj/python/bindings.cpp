// Python bindings: the report builders shared with the CLI, exposed as
// functions returning plain dicts (decoded from the deterministic JSON
// reports), plus a few scalar helpers.

#include "qforms/reports.hpp"
#include "qforms/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qf;

namespace {

py::object to_py(const Json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

QuadraticForm form_from_arg(const py::object& form) {
  if (py::isinstance<py::str>(form))
    return form_from_json(Json::parse(form.cast<std::string>()));
  py::module_ json = py::module_::import("json");
  std::string dumped = json.attr("dumps")(form).cast<std::string>();
  return form_from_json(Json::parse(dumped));
}

std::vector<Rational> rationals_from(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

Field field_from_tag(const std::string& tag) {
  if (tag == "Q") return Field::Q();
  if (tag == "R") return Field::R();
  if (tag.rfind("Fp:", 0) == 0) return Field::Fp(Int(tag.substr(3)));
  throw std::invalid_argument("field must be 'Q', 'R' or 'Fp:<odd prime>'");
}

}  // namespace

PYBIND11_MODULE(_qforms, m) {
  m.doc() =
      "Exact quadratic-form analysis: invariants, isotropy, Witt indices, "
      "Pfister/composition-algebra certificates, automorphism families and "
      "ruledness verdicts. Forms are dicts like "
      "{'field': 'Q', 'diagonal': ['1', '-2']} or "
      "{'field': 'Q', 'poly': 'x1*x2 + x3^2', 'vars': ['x1','x2','x3']}.";

  m.def("analyze", [](const py::object& form) { return to_py(reports::analyze(form_from_arg(form))); },
        py::arg("form"), "Classical invariants (dimension, det, disc, signature, Hasse).");

  m.def("isotropy",
        [](const py::object& form, int height_bound) {
          return to_py(reports::isotropy(form_from_arg(form), height_bound));
        },
        py::arg("form"), py::arg("height_bound") = 100,
        "Isotropy decision with an optional primitive witness.");

  m.def("witt", [](const py::object& form) { return to_py(reports::witt(form_from_arg(form))); },
        py::arg("form"), "Witt decomposition at the invariant level.");

  m.def("first_witt_index",
        [](const py::object& form) { return to_py(reports::first_witt(form_from_arg(form))); },
        py::arg("form"), "First Witt index of an anisotropic form over Q or R.");

  m.def("ruled", [](const py::object& form) { return to_py(reports::ruled(form_from_arg(form))); },
        py::arg("form"), "Ruledness verdict for the projective quadric.");

  m.def("sphere_ruled", [](int n) { return to_py(reports::sphere_ruled(n)); }, py::arg("n"),
        "Ruledness of x0^2+...+xn^2 = 0 over R.");

  m.def("aut",
        [](const py::object& form_or_poly, const std::string& field, bool complement,
           int height_bound, int degree) {
          if (py::isinstance<py::str>(form_or_poly) && !complement) {
            std::string text = form_or_poly.cast<std::string>();
            if (!text.empty() && text[0] != '{') {
              // bare polynomial text: infer variables in appearance order
              std::vector<std::string> vars;
              for (size_t i = 0; i < text.size();) {
                if (isalpha(static_cast<unsigned char>(text[i]))) {
                  size_t j = i;
                  while (j < text.size() &&
                         (isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                    ++j;
                  std::string name = text.substr(i, j - i);
                  if (std::find(vars.begin(), vars.end(), name) == vars.end())
                    vars.push_back(name);
                  i = j;
                } else {
                  ++i;
                }
              }
              Polynomial f = Polynomial::parse(text, vars);
              return to_py(reports::aut_affine(f, field_from_tag(field), height_bound, degree));
            }
          }
          QuadraticForm q = form_from_arg(form_or_poly);
          if (complement) return to_py(reports::aut_complement(q, height_bound));
          return to_py(reports::aut_affine(
              q.to_polynomial(QuadraticForm::default_vars(q.dim())), q.field(),
              height_bound, degree));
        },
        py::arg("form_or_poly"), py::arg("field") = "Q", py::arg("complement") = false,
        py::arg("height_bound") = 100, py::arg("degree") = 0,
        "Automorphism-group verdict for an affine quadric (polynomial text or "
        "form dict) or a projective complement (complement=True).");

  m.def("pfister_build",
        [](const std::vector<std::string>& params, const std::string& field) {
          return to_py(reports::pfister_build(field_from_tag(field), rationals_from(params)));
        },
        py::arg("params"), py::arg("field") = "Q",
        "Expand the Pfister form <<a_1,...,a_n>>.");

  m.def("pfister_multiply",
        [](int fold, const std::vector<std::string>& params) {
          return to_py(reports::pfister_multiply(fold, rationals_from(params), params.empty()));
        },
        py::arg("fold"), py::arg("params") = std::vector<std::string>{},
        "Composition-algebra multiplication with the norm certificate "
        "(symbolic parameters when params is empty).");

  m.def("pfister_neighbor",
        [](const py::object& form) { return to_py(reports::pfister_neighbor(form_from_arg(form))); },
        py::arg("form"), "Pfister-neighbor analysis of an anisotropic form.");

  m.def("hopf", [](int fold) { return to_py(reports::pfister_hopf(fold)); }, py::arg("fold"),
        "Hopf map with the sphere-to-sphere certificate (folds 1-3).");

  m.def("product_map",
        [](int fold, int p1_dim, int r, const std::vector<std::string>& params,
           const std::vector<std::string>& scalars) {
          bool symbolic = params.empty() && scalars.empty();
          return to_py(reports::map_certificate(fold, p1_dim,
                                                symbolic ? r : static_cast<int>(scalars.size()),
                                                symbolic, rationals_from(params),
                                                rationals_from(scalars)));
        },
        py::arg("fold"), py::arg("p1_dim"), py::arg("r") = 1,
        py::arg("params") = std::vector<std::string>{},
        py::arg("scalars") = std::vector<std::string>{},
        "Product-of-Pfister-forms birational map with its identity certificate.");

  m.def("verify", [](const std::string& suite) { return to_py(reports::verify_suite(suite)); },
        py::arg("suite"), "Run the 'identities' or 'oracle' verification suite.");

  m.def("hilbert_symbol",
        [](const std::string& a, const std::string& b, const std::string& place) {
          SquareClass ca = square_class_reduce(parse_rational(a));
          SquareClass cb = square_class_reduce(parse_rational(b));
          Place v = place == "real" ? Place::real() : Place::prime(Int(place));
          return hilbert_symbol(ca, cb, v);
        },
        py::arg("a"), py::arg("b"), py::arg("place"),
        "Hilbert symbol (a,b)_v; place is 'real' or a prime as a string.");

  m.def("square_class",
        [](const std::string& r) { return square_class_reduce(parse_rational(r)).rep.str(); },
        py::arg("r"), "Squarefree square-class representative of a rational.");

  m.def("factorize",
        [](const std::string& n) {
          std::vector<std::pair<std::string, int>> out;
          for (const auto& [p, e] : factorize(Int(n))) out.emplace_back(p.str(), e);
          return out;
        },
        py::arg("n"), "Prime factorization of |n| as (prime, exponent) string pairs.");

  m.def("parse_polynomial",
        [](const std::string& text, const std::vector<std::string>& vars) {
          return Polynomial::parse(text, vars).str();
        },
        py::arg("text"), py::arg("vars"),
        "Parse and normalize a polynomial; returns the canonical rendering.");

  m.attr("__version__") = "0.1.0";
}
