// Acceptance suite: one criterion per check, one pass/fail line each.
// Every tolerance is exact (symbolic identities and frozen golden tables);
// the stated runtime budgets are enforced.

#include "qforms/autgroup.hpp"
#include "qforms/pfister.hpp"
#include "qforms/reports.hpp"
#include "qforms/ruledness.hpp"
#include "qforms/serialize.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace qf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string run_cli(const std::string& args, int* exit_code) {
  std::string cmd = std::string(QFORMS_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  *exit_code = WEXITSTATUS(pclose(pipe));
  return out;
}

std::vector<Rational> random_diagonal(std::mt19937& rng, int dim, int spread) {
  std::uniform_int_distribution<int> coeff(-spread, spread);
  std::vector<Rational> d(dim);
  for (auto& e : d) {
    int c = 0;
    while (c == 0) c = coeff(rng);
    e = c;
  }
  return d;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  std::mt19937 rng(1001);
  std::uniform_int_distribution<int> dim_pick(3, 6), cpick(-2, 2);
  int built = 0, attempts = 0;
  while (built < 50) {
    if (++attempts > 4000) return {false, "could not assemble 50 witnessed forms"};
    int n = dim_pick(rng);
    std::vector<Rational> d = random_diagonal(rng, n, 10);
    QuadraticForm q = QuadraticForm::diagonal(Field::Q(), d);
    if (!is_isotropic(q)) continue;
    if (!isotropic_witness(q, 100)) continue;
    auto vars = QuadraticForm::default_vars(n);
    int c = cpick(rng);
    Polynomial f =
        q.to_polynomial(vars) + Polynomial::constant(c).with_variables(vars);
    AffineQuadric X = AffineQuadric::from_polynomial(f, Field::Q());
    AutomorphismFamily fam = ga_family(X, 100);

    // re-verify the two identities independently of the constructor
    Polynomial pulled = compose(X.f, vars, fam.family);
    if (!(pulled - X.f.with_variables(pulled.variables())).is_zero())
      return {false, "family failed to preserve f"};
    std::vector<std::string> zts = vars;
    zts.push_back(fam.parameter);
    zts.push_back("s_");
    std::map<std::string, Polynomial> rename, inner, shift;
    for (const auto& v : vars) {
      rename.emplace(v, Polynomial::variable(v, zts));
      shift.emplace(v, Polynomial::variable(v, zts));
    }
    rename.emplace(fam.parameter, Polynomial::variable("s_", zts));
    shift.emplace(fam.parameter, Polynomial::variable("s_", zts) +
                                     Polynomial::variable(fam.parameter, zts));
    for (size_t i = 0; i < vars.size(); ++i)
      inner.emplace(vars[i], fam.family.components[i].with_variables(zts));
    inner.emplace("s_", Polynomial::variable("s_", zts));
    for (size_t i = 0; i < vars.size(); ++i) {
      Polynomial composed = fam.family.components[i].substitute(rename).substitute(inner);
      Polynomial direct = fam.family.components[i].substitute(shift);
      if (composed != direct) return {false, "one-parameter group law failed"};
    }
    ++built;
  }
  return {true, "50 families verified exactly"};
}

Outcome criterion2() {
  std::vector<std::string> vars{"x1", "x2", "x3"};
  Polynomial f = Polynomial::parse("x1*x2 + x3^2 - 1", vars);
  AffineQuadric X = AffineQuadric::from_polynomial(f, Field::Q());
  AutomorphismFamily fam = ga_family(X, 10);
  if (fam.kind != FamilyCase::SiegelTransvection) return {false, "unexpected family case"};

  std::vector<Polynomial> gs{Polynomial().with_variables(vars),
                             Polynomial::constant(1).with_variables(vars),
                             Polynomial::constant(-3).with_variables(vars),
                             Polynomial::variable("x2", vars)};
  for (const auto& g : gs) {
    PolyMap tw = twist(X, fam, g);
    if (!(compose(f, vars, tw) - f).is_zero()) return {false, "twist broke f"};
    // the displayed shape: (x1 - g^2 x2 - 2 g x3, x2, g x2 + x3)
    Polynomial x1 = Polynomial::variable("x1", vars), x2 = Polynomial::variable("x2", vars),
               x3 = Polynomial::variable("x3", vars);
    if (tw.components[0] != x1 - g * g * x2 - Rational(2) * g * x3)
      return {false, "first component mismatch"};
    if (tw.components[1] != x2) return {false, "fixed coordinate moved"};
    if (tw.components[2] != g * x2 + x3) return {false, "third component mismatch"};
  }
  return {true, "twists by constants and x2 reproduce the displayed maps"};
}

Outcome criterion3() {
  for (int fold = 1; fold <= 3; ++fold)
    if (!cayley_dickson_multiply(fold).certificate.is_zero())
      return {false, "norm certificate nonzero at fold " + std::to_string(fold)};

  const int dim = 8;
  std::vector<std::string> ring;
  for (const auto* s : {"x", "y", "z"})
    for (int i = 1; i <= dim; ++i) ring.push_back(std::string(s) + std::to_string(i));
  for (int k = 1; k <= 3; ++k) ring.push_back("a" + std::to_string(k));
  std::vector<Polynomial> params;
  for (int k = 1; k <= 3; ++k)
    params.push_back(Polynomial::variable("a" + std::to_string(k), ring));
  auto vec = [&](const std::string& s) {
    std::vector<Polynomial> out;
    for (int i = 1; i <= dim; ++i)
      out.push_back(Polynomial::variable(s + std::to_string(i), ring));
    return out;
  };
  auto x = vec("x"), y = vec("y"), z = vec("z");
  auto left = cd_multiply(3, params, cd_multiply(3, params, x, y), z);
  auto right = cd_multiply(3, params, x, cd_multiply(3, params, y, z));
  bool associative = true;
  for (size_t i = 0; i < left.size(); ++i)
    if (left[i] != right[i]) associative = false;
  if (associative) return {false, "octonion associator vanished"};
  return {true, "N(xy)=N(x)N(y) for folds 1-3; fold-3 associator nonzero"};
}

Outcome criterion4() {
  int count = 0;
  for (int fold = 1; fold <= 3; ++fold)
    for (int p1 = 1; p1 <= (1 << fold); ++p1)
      for (int r = 1; r <= 3; ++r) {
        if (!ahmad_ohm_map(fold, p1, r).identity.is_zero())
          return {false, "identity nonzero at fold " + std::to_string(fold) + ", P1 " +
                             std::to_string(p1) + ", r " + std::to_string(r)};
        ++count;
      }
  return {true, std::to_string(count) + " symbolic certificates all zero"};
}

Outcome criterion5() {
  for (int fold = 1; fold <= 3; ++fold)
    if (!hopf_map(fold).certificate.is_zero())
      return {false, "sphere certificate nonzero at fold " + std::to_string(fold)};
  return {true, "S^3->S^2, S^7->S^4, S^15->S^8 certificates exactly zero"};
}

Outcome criterion6() {
  std::mt19937 rng(1006);
  std::uniform_int_distribution<int> dim_pick(3, 5);
  for (int trial = 0; trial < 200; ++trial) {
    QuadraticForm q =
        QuadraticForm::diagonal(Field::Q(), random_diagonal(rng, dim_pick(rng), 20));
    bool decided = is_isotropic(q);
    auto witness = isotropic_witness(q, 100);  // exhaustive for diagonal forms
    if (witness) {
      if (!decided) return {false, "witness found for a declared-anisotropic form"};
      if (q.evaluate(*witness) != 0) return {false, "witness does not vanish"};
    } else if (decided) {
      // witness taller than the bound; consistency not violated
    }
    if (!decided && witness) return {false, "inconsistent pair"};
  }
  return {true, "200 forms consistent"};
}

Outcome criterion7() {
  std::mt19937 rng(1007);
  std::uniform_int_distribution<int> m_pick(0, 4), kernel_pick(0, 2), kdim(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int m = m_pick(rng);
    int kind = kernel_pick(rng);
    Field field = kind == 0 ? Field::R() : Field::Q();
    std::vector<Rational> kernel;
    if (kind == 0) {
      kernel.assign(kdim(rng), Rational(1));  // definite over R
    } else if (kind == 1) {
      kernel = {1, 1, 1, 7};
    } else {
      kernel = {1, 1, 1};
    }
    std::vector<Rational> d;
    for (int k = 0; k < m; ++k) {
      d.push_back(1);
      d.push_back(-1);
    }
    d.insert(d.end(), kernel.begin(), kernel.end());
    QuadraticForm q = QuadraticForm::diagonal(field, d);
    WittDecomposition dec = witt_decompose(q);
    if (dec.witt_index != m)
      return {false, "wrong index " + std::to_string(dec.witt_index) + " vs " +
                         std::to_string(m)};
    if (!(dec.anisotropic == invariants(QuadraticForm::diagonal(field, kernel))))
      return {false, "anisotropic part mismatch"};
  }
  return {true, "100 constructed decompositions recovered"};
}

Outcome criterion8() {
  for (int m = 2; m <= 17; ++m) {
    QuadraticForm q =
        QuadraticForm::diagonal(Field::R(), std::vector<Rational>(m, Rational(1)));
    FirstWittIndexResult r = first_witt_index(q);
    if (!r.determined()) return {false, "undetermined at m=" + std::to_string(m)};
    int n = 0;
    while ((1 << n) < m) ++n;
    if (*r.value != m - (1 << (n - 1)))
      return {false, "wrong i1 at m=" + std::to_string(m)};
  }
  for (auto [m, want] : std::vector<std::pair<int, int>>{
           {3, 1}, {5, 1}, {9, 1}, {17, 1}, {4, 2}, {8, 4}, {16, 8}}) {
    QuadraticForm q =
        QuadraticForm::diagonal(Field::R(), std::vector<Rational>(m, Rational(1)));
    if (*first_witt_index(q).value != want)
      return {false, "pinned value failed at m=" + std::to_string(m)};
  }
  return {true, "i1(m squares) = m - 2^(ceil(log2 m)-1) for m=2..17"};
}

Outcome criterion9() {
  for (int n : {1, 2, 4, 8, 16}) {
    auto vars = QuadraticForm::default_vars(n + 1, "x");
    QuadraticForm q =
        QuadraticForm::diagonal(Field::R(), std::vector<Rational>(n + 1, Rational(1)));
    Polynomial f = q.to_polynomial(vars) - Polynomial::constant(1).with_variables(vars);
    GroupVerdict v = group_verdict(AffineQuadric::from_polynomial(f, Field::R()), 10);
    if (v.verdict != GroupKind::PGO_W_in_V)
      return {false, "n=" + std::to_string(n) + " not PGO(W in V)"};
    if (v.named_group != "O(" + std::to_string(n + 1) + ")")
      return {false, "n=" + std::to_string(n) + " not named O(n+1)"};
  }
  for (int n : {3, 5, 6, 7, 9}) {
    auto vars = QuadraticForm::default_vars(n + 1, "x");
    QuadraticForm q =
        QuadraticForm::diagonal(Field::R(), std::vector<Rational>(n + 1, Rational(1)));
    Polynomial f = q.to_polynomial(vars) - Polynomial::constant(1).with_variables(vars);
    GroupVerdict v = group_verdict(AffineQuadric::from_polynomial(f, Field::R()), 10);
    if (v.verdict != GroupKind::Unknown)
      return {false, "n=" + std::to_string(n) + " expected Unknown"};
  }
  return {true, "O(n+1) for n in {1,2,4,8,16}; Unknown for n in {3,5,6,7,9}"};
}

Outcome criterion10() {
  auto diag_q = [](std::vector<Rational> d) {
    return QuadraticForm::diagonal(Field::Q(), d);
  };
  if (classify_ruledness(diag_q({1, 1, 1, 1})).verdict != Ruledness::Ruled)
    return {false, "<1,1,1,1> not Ruled"};
  if (classify_ruledness(diag_q({1, 1, 1, 7})).verdict != Ruledness::NotRuled)
    return {false, "<1,1,1,7> not NotRuled"};
  if (classify_ruledness(diag_q({1, 1, 1, 1, 1})).verdict != Ruledness::NotRuled)
    return {false, "five ones not NotRuled"};
  RuledVerdict six = classify_ruledness(diag_q({1, 1, 1, 1, 1, 1}));
  if (six.verdict != Ruledness::Ruled || !six.divisibility)
    return {false, "six ones missing divisibility certificate"};
  if (six.divisibility->binary_class.rep != -1 ||
      six.divisibility->cofactor != std::vector<Rational>{1, 1, 1})
    return {false, "six-ones certificate is not (b=-1, tau=<1,1,1>)"};
  if (classify_ruledness(diag_q(std::vector<Rational>(7, 1))).verdict != Ruledness::Ruled)
    return {false, "seven ones not Ruled"};
  if (classify_ruledness(diag_q(std::vector<Rational>(9, 1))).verdict !=
      Ruledness::NotRuled)
    return {false, "nine ones not NotRuled"};
  for (int n = 1; n <= 32; ++n) {
    bool power = (n & (n - 1)) == 0;
    RuledVerdict v = sphere_quadric_ruledness(n);
    if (v.verdict != (power ? Ruledness::NotRuled : Ruledness::Ruled))
      return {false, "sphere rule failed at n=" + std::to_string(n)};
  }
  return {true, "golden table and the sphere rule up to n=32"};
}

Outcome criterion11() {
  std::mt19937 rng(1011);
  std::uniform_int_distribution<int> entry(1, 8), bpick(1, 10), kind(0, 3);
  int done = 0;
  while (done < 50) {
    bool dim8 = kind(rng) == 3;  // a quarter of the samples in dimension 8
    Int b = -bpick(rng);
    std::vector<Rational> tau;
    for (int i = 0; i < (dim8 ? 4 : 3); ++i) tau.push_back(entry(rng));
    QuadraticForm q = tensor(QuadraticForm::diagonal(Field::Q(), {1, Rational(-b)}),
                             QuadraticForm::diagonal(Field::Q(), tau));
    if (is_isotropic(q)) continue;
    auto cert = binary_divisibility_search(q);
    if (!cert) return {false, "search missed a constructed divisor"};
    QuadraticForm model = tensor(
        QuadraticForm::diagonal(Field::Q(), {1, Rational(-cert->binary_class.rep)}),
        QuadraticForm::diagonal(Field::Q(), cert->cofactor));
    if (!is_equivalent(q, model)) return {false, "certificate failed re-verification"};
    ++done;
  }
  return {true, "50 round trips re-verified"};
}

Outcome criterion12() {
  for (const char* args :
       {"ruled --diag 1,1,1,1,1,1 --json", "aut --poly \"x1*x2+x3^2-1\" --json",
        "i1 --field R --diag 1,1,1,1,1 --json", "sphere-ruled 12 --json"}) {
    int code1 = 0, code2 = 0;
    std::string a = run_cli(args, &code1);
    std::string b = run_cli(args, &code2);
    if (a != b || code1 != code2) return {false, std::string("nondeterministic: ") + args};
    if (code1 != 0) return {false, std::string("nonzero exit: ") + args};
    Json j = Json::parse(a);
    if (j.value("schema", 0) != 1 || !j.contains("subcommand"))
      return {false, std::string("schema violation: ") + args};
  }
  int code = 0;
  std::string undet = run_cli("i1 --diag 1,1,1,1,1,1,1,1,1,1 --json", &code);
  if (code != 0) return {false, "Undetermined verdict must exit 0"};
  Json j = Json::parse(undet);
  if (j.at("i1").at("determined").get<bool>()) return {false, "expected Undetermined"};
  return {true, "byte-identical reruns, schema fields, Undetermined exits 0"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string label;
    double budget_seconds;
    std::function<Outcome()> body;
  };
  std::vector<Criterion> criteria{
      {1, "symbolic automorphism identities on 50 random isotropic quadrics", 30, criterion1},
      {2, "hand-checked family and twists on x1*x2 + x3^2 = 1", 1, criterion2},
      {3, "composition-norm multiplicativity and fold-3 non-associativity", 10, criterion3},
      {4, "product-map identity certificates, full grid", 60, criterion4},
      {5, "Hopf sphere certificates", 10, criterion5},
      {6, "local-global isotropy vs height-100 witness search, 200 forms", 60, criterion6},
      {7, "Witt decomposition on 100 constructed splittings", 30, criterion7},
      {8, "first-Witt-index golden table over R (m = 2..17)", 1, criterion8},
      {9, "sphere automorphism verdicts", 1, criterion9},
      {10, "ruledness golden table and sphere rule (n <= 32)", 10, criterion10},
      {11, "binary divisibility round trips, 50 samples", 60, criterion11},
      {12, "CLI determinism, schema, Undetermined exit code", 10, criterion12},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out{false, "exception"};
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs <= c.budget_seconds;
    bool pass = out.pass && in_budget;
    if (!pass) ++failures;
    std::ostringstream line;
    line << "[criterion " << c.id << "] " << (pass ? "PASS" : "FAIL") << " (" << std::fixed;
    line.precision(2);
    line << secs << "s/" << c.budget_seconds << "s) " << c.label << " -- " << out.detail;
    if (!in_budget) line << " [over budget]";
    std::cout << line.str() << std::endl;
  }
  if (failures == 0)
    std::cout << "acceptance: all " << criteria.size() << " criteria passed" << std::endl;
  else
    std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
  return failures == 0 ? 0 : 1;
}
