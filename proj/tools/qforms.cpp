// qforms: exact quadratic-form analysis from the command line.
//
// Subcommands: analyze, isotropy, witt, i1, ruled, sphere-ruled, aut,
// pfister {build|multiply|neighbor|hopf}, map, verify. Every report is
// also available as deterministic JSON (--json), and form-consuming
// subcommands accept newline-delimited JSON batches (--batch).

#include "qforms/reports.hpp"
#include "qforms/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <algorithm>
#include <sstream>

namespace {

using qf::Field;
using qf::Json;
using qf::Polynomial;
using qf::QuadraticForm;
using qf::Rational;

struct FormInput {
  std::string field = "Q";
  std::string diag;
  std::string poly;
  std::vector<std::string> vars;
  std::string file;
  std::string batch;
};

struct OutputOpts {
  bool json = false;
  std::string out_path;
};

Field parse_field(const std::string& tag) {
  if (tag == "Q") return Field::Q();
  if (tag == "R") return Field::R();
  if (tag.rfind("Fp:", 0) == 0) return Field::Fp(qf::Int(tag.substr(3)));
  throw std::invalid_argument("field must be Q, R or Fp:<odd prime>, got '" + tag + "'");
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(qf::parse_rational(item));
  if (out.empty()) throw std::invalid_argument("expected a comma-separated list");
  return out;
}

// variables given explicitly, or inferred from first appearance in the text
std::vector<std::string> infer_vars(const std::string& text) {
  std::vector<std::string> vars;
  for (size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string name = text.substr(i, j - i);
      if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
      i = j;
    } else {
      ++i;
    }
  }
  return vars;
}

int input_count(const FormInput& in) {
  return !in.diag.empty() + !in.poly.empty() + !in.file.empty() + !in.batch.empty();
}

QuadraticForm form_from_input(const FormInput& in) {
  if (input_count(in) != 1)
    throw std::invalid_argument(
        "exactly one input source required (--diag, --poly, --input or --batch)");
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw std::invalid_argument("cannot open '" + in.file + "'");
    Json j = Json::parse(f);
    return qf::form_from_json(j);
  }
  Field field = parse_field(in.field);
  if (!in.diag.empty()) return QuadraticForm::diagonal(field, parse_rational_list(in.diag));
  std::vector<std::string> vars = in.vars.empty() ? infer_vars(in.poly) : in.vars;
  Polynomial p = Polynomial::parse(in.poly, vars);
  return QuadraticForm::from_polynomial(p, field);
}

void add_form_options(CLI::App* cmd, FormInput& in, bool with_batch = true) {
  cmd->add_option("--field", in.field, "Base field: Q, R or Fp:<odd prime>")
      ->default_str("Q");
  cmd->add_option("--diag", in.diag, "Diagonal entries, e.g. 1,-2,7/3");
  cmd->add_option("--poly", in.poly, "Homogeneous degree-2 polynomial");
  cmd->add_option("--vars", in.vars, "Variable order for --poly (default: inferred)")
      ->delimiter(',');
  cmd->add_option("--input", in.file, "JSON form file");
  if (with_batch)
    cmd->add_option("--batch", in.batch, "Newline-delimited JSON forms, one report per line");
}

void add_output_options(CLI::App* cmd, OutputOpts& out) {
  cmd->add_flag("--json", out.json, "Emit the JSON report instead of text");
  cmd->add_option("--out", out.out_path, "Also write the JSON report to a file");
}

// ---------------------------------------------------------------------------
// human-readable rendering

void render_lines(const Json& report, std::ostream& os) {
  const std::string sub = report.value("subcommand", "");
  if (report.contains("error")) {
    os << "error (" << report["error"]["type"].get<std::string>()
       << "): " << report["error"]["message"].get<std::string>() << "\n";
    return;
  }
  if (sub == "analyze") {
    const Json& inv = report["invariants"];
    os << "dimension " << inv["dimension"] << " (+" << inv["radical_dimension"]
       << " radical), det " << inv["det"].get<std::string>() << ", disc "
       << inv["disc"].get<std::string>();
    if (!inv["signature"].is_null())
      os << ", signature (" << inv["signature"][0] << "," << inv["signature"][1] << ")";
    os << "\n";
    if (!inv["hasse_minus_one"].empty()) {
      os << "hasse -1 at:";
      for (const auto& v : inv["hasse_minus_one"]) os << " " << v.get<std::string>();
      os << "\n";
    }
    return;
  }
  if (sub == "isotropy") {
    os << (report["isotropic"].get<bool>() ? "isotropic" : "anisotropic") << "\n";
    if (!report["witness"].is_null()) {
      os << "witness:";
      for (const auto& c : report["witness"]) os << " " << c.get<std::string>();
      os << "\n";
    }
    return;
  }
  if (sub == "witt") {
    os << "witt index " << report["witt_index"] << ", radical "
       << report["radical_dimension"] << ", anisotropic dimension "
       << report["anisotropic_part"]["dimension"] << "\n";
    return;
  }
  if (sub == "i1") {
    const Json& i1 = report["i1"];
    if (i1["determined"].get<bool>())
      os << "i1 = " << i1["value"] << "\n";
    else
      os << "i1 = Undetermined\n";
    for (const auto& j : i1["justification"]) os << "  " << j.get<std::string>() << "\n";
    return;
  }
  if (sub == "ruled" || sub == "sphere-ruled") {
    os << report["verdict"].get<std::string>() << "\n";
    for (const auto& t : report["trace"]) os << "  " << t.get<std::string>() << "\n";
    return;
  }
  if (sub == "aut") {
    os << report["verdict"].get<std::string>();
    if (!report["named_group"].is_null())
      os << " (" << report["named_group"].get<std::string>() << ")";
    os << "\n";
    for (const auto& t : report["trace"]) os << "  " << t.get<std::string>() << "\n";
    return;
  }
  if (sub == "verify") {
    for (const auto& c : report["checks"])
      os << (c["pass"].get<bool>() ? "pass" : "FAIL") << "  "
         << c["name"].get<std::string>() << "\n";
    os << (report["all_pass"].get<bool>() ? "all checks passed" : "CHECKS FAILED") << "\n";
    return;
  }
  // certificate-style payloads: print the dump
  os << report.dump(2) << "\n";
}

int emit(const Json& report, const OutputOpts& out) {
  if (!out.out_path.empty()) {
    std::ofstream f(out.out_path, std::ios::app);
    f << report.dump() << "\n";
  }
  if (out.json)
    std::cout << report.dump(2) << "\n";
  else
    render_lines(report, std::cout);
  return qf::reports::exit_code_of(report);
}

int run_batch(const FormInput& in, const OutputOpts& out,
              const std::function<Json(const QuadraticForm&)>& body) {
  std::ifstream f(in.batch);
  if (!f) throw std::invalid_argument("cannot open '" + in.batch + "'");
  std::ofstream sink;
  if (!out.out_path.empty()) sink.open(out.out_path, std::ios::app);
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json report;
    try {
      report = body(qf::form_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      report = qf::reports::error_from_exception(e);
      report["line"] = lineno;
    }
    std::cout << report.dump() << "\n";
    if (sink.is_open()) sink << report.dump() << "\n";
  }
  return 0;  // per-line failures do not abort the batch
}

int run_form_command(const FormInput& in, const OutputOpts& out,
                     const std::function<Json(const QuadraticForm&)>& body) {
  if (!in.batch.empty()) {
    if (input_count(in) != 1)
      throw std::invalid_argument("--batch excludes other input sources");
    return run_batch(in, out, body);
  }
  return emit(body(form_from_input(in)), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact quadratic form invariants, automorphism families and ruledness verdicts"};
  app.require_subcommand(1);

  std::string factor_bound;
  app.add_option("--factor-bound", factor_bound,
                 "Factorization bound (default 2^64; also QFORMS_FACTOR_BOUND)");

  FormInput in;
  OutputOpts out;
  int height_bound = 100;
  int degree = 0;

  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--height-bound", height_bound,
                    "Witness search height bound (default 100)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Classical invariants of a form");
  add_form_options(analyze, in);
  add_output_options(analyze, out);

  CLI::App* isotropy = app.add_subcommand("isotropy", "Isotropy decision and witness");
  add_form_options(isotropy, in);
  add_output_options(isotropy, out);
  add_bounds(isotropy);

  CLI::App* witt = app.add_subcommand("witt", "Witt decomposition");
  add_form_options(witt, in);
  add_output_options(witt, out);

  CLI::App* i1 = app.add_subcommand("i1", "First Witt index of an anisotropic form");
  add_form_options(i1, in);
  add_output_options(i1, out);

  CLI::App* ruled = app.add_subcommand("ruled", "Ruledness of the projective quadric");
  add_form_options(ruled, in);
  add_output_options(ruled, out);

  int sphere_n = 0;
  CLI::App* sphere = app.add_subcommand("sphere-ruled",
                                        "Ruledness of x0^2+...+xn^2 = 0 over R");
  sphere->add_option("n", sphere_n, "Sphere parameter n >= 1")->required();
  add_output_options(sphere, out);

  bool complement = false;
  CLI::App* aut = app.add_subcommand("aut", "Automorphism-group verdict");
  add_form_options(aut, in);
  add_output_options(aut, out);
  add_bounds(aut);
  aut->add_flag("--complement", complement,
                "Analyze the projective complement P^{n-1} - {q = 0}");
  aut->add_option("--degree", degree,
                  "Also report an invariant-function basis up to this degree");

  CLI::App* pfister = app.add_subcommand("pfister", "Pfister form toolbox");
  pfister->require_subcommand(1);
  std::string params_csv, scalars_csv;
  int fold = 1;

  CLI::App* pf_build = pfister->add_subcommand("build", "Expand <<a_1,...,a_n>>");
  pf_build->add_option("--params", params_csv, "Parameters a_1,...,a_n")->required();
  pf_build->add_option("--field", in.field, "Base field")->default_str("Q");
  add_output_options(pf_build, out);

  CLI::App* pf_mult = pfister->add_subcommand(
      "multiply", "Composition-algebra multiplication with norm certificate");
  pf_mult->add_option("--fold", fold, "1, 2 or 3")->required();
  pf_mult->add_option("--params", params_csv, "Rational parameters (default: symbolic)");
  add_output_options(pf_mult, out);

  CLI::App* pf_neighbor = pfister->add_subcommand("neighbor", "Pfister-neighbor analysis");
  add_form_options(pf_neighbor, in);
  add_output_options(pf_neighbor, out);

  CLI::App* pf_hopf = pfister->add_subcommand("hopf", "Hopf map with sphere certificate");
  pf_hopf->add_option("--fold", fold, "1, 2 or 3")->required();
  add_output_options(pf_hopf, out);

  CLI::App* mapcmd = app.add_subcommand(
      "map", "Product-of-Pfister-forms birational map with identity certificate");
  mapcmd->add_option("--fold", fold, "Pfister fold (1-3)")->required();
  int p1_dim = 1, r = 1;
  mapcmd->add_option("--p1-dim", p1_dim, "Dimension of the subform P1")->required();
  mapcmd->add_option("--r", r, "Number of blocks (symbolic mode)");
  mapcmd->add_option("--params", params_csv, "Rational Pfister parameters");
  mapcmd->add_option("--scalars", scalars_csv, "Rational scalars b_1,...,b_r");
  add_output_options(mapcmd, out);

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "identities or oracle")->required();
  add_output_options(verify, out);

  // global flags like --factor-bound may follow the subcommand
  for (CLI::App* sc : app.get_subcommands(nullptr)) {
    sc->fallthrough();
    for (CLI::App* nested : sc->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage and parse errors exit 1
  }

  try {
    const char* env_bound = std::getenv("QFORMS_FACTOR_BOUND");
    if (!factor_bound.empty())
      qf::set_factorization_bound(qf::Int(factor_bound));
    else if (env_bound && *env_bound)
      qf::set_factorization_bound(qf::Int(env_bound));

    if (analyze->parsed())
      return run_form_command(in, out, [](const QuadraticForm& q) {
        return qf::reports::analyze(q);
      });
    if (isotropy->parsed())
      return run_form_command(in, out, [&](const QuadraticForm& q) {
        return qf::reports::isotropy(q, height_bound);
      });
    if (witt->parsed())
      return run_form_command(in, out, [](const QuadraticForm& q) {
        return qf::reports::witt(q);
      });
    if (i1->parsed())
      return run_form_command(in, out, [](const QuadraticForm& q) {
        return qf::reports::first_witt(q);
      });
    if (ruled->parsed())
      return run_form_command(in, out, [](const QuadraticForm& q) {
        return qf::reports::ruled(q);
      });
    if (sphere->parsed()) return emit(qf::reports::sphere_ruled(sphere_n), out);
    if (aut->parsed()) {
      if (complement)
        return run_form_command(in, out, [&](const QuadraticForm& q) {
          return qf::reports::aut_complement(q, height_bound);
        });
      if (!in.batch.empty())
        return run_batch(in, out, [&](const QuadraticForm& q) {
          return qf::reports::aut_affine(
              q.to_polynomial(QuadraticForm::default_vars(q.dim())), q.field(),
              height_bound, degree);
        });
      if (!in.poly.empty()) {
        Field field = parse_field(in.field);
        std::vector<std::string> vars = in.vars.empty() ? infer_vars(in.poly) : in.vars;
        Polynomial f = Polynomial::parse(in.poly, vars);
        return emit(qf::reports::aut_affine(f, field, height_bound, degree), out);
      }
      QuadraticForm q = form_from_input(in);
      return emit(qf::reports::aut_affine(
                      q.to_polynomial(QuadraticForm::default_vars(q.dim())), q.field(),
                      height_bound, degree),
                  out);
    }
    if (pf_build->parsed())
      return emit(qf::reports::pfister_build(parse_field(in.field),
                                             parse_rational_list(params_csv)),
                  out);
    if (pf_mult->parsed()) {
      bool sym = params_csv.empty();
      std::vector<Rational> ps = sym ? std::vector<Rational>{} : parse_rational_list(params_csv);
      return emit(qf::reports::pfister_multiply(fold, ps, sym), out);
    }
    if (pf_neighbor->parsed())
      return run_form_command(in, out, [](const QuadraticForm& q) {
        return qf::reports::pfister_neighbor(q);
      });
    if (pf_hopf->parsed()) return emit(qf::reports::pfister_hopf(fold), out);
    if (mapcmd->parsed()) {
      bool sym = params_csv.empty() && scalars_csv.empty();
      std::vector<Rational> ps, bs;
      if (!sym) {
        ps = parse_rational_list(params_csv);
        bs = parse_rational_list(scalars_csv);
        r = static_cast<int>(bs.size());
      }
      return emit(qf::reports::map_certificate(fold, p1_dim, r, sym, ps, bs), out);
    }
    if (verify->parsed()) {
      Json report = qf::reports::verify_suite(suite);
      int code = emit(report, out);
      if (code == 0 && !report["all_pass"].get<bool>()) return 1;
      return code;
    }
    return 1;
  } catch (const std::exception& e) {
    Json report = qf::reports::error_from_exception(e);
    if (out.json)
      std::cout << report.dump(2) << "\n";
    else
      std::cerr << "error (" << report["error"]["type"].get<std::string>()
                << "): " << report["error"]["message"].get<std::string>() << "\n";
    return qf::reports::exit_code_of(report);
  }
}
