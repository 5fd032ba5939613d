#include "qforms/autgroup.hpp"

#include <doctest.h>

#include <random>

using namespace qf;

namespace {

AffineQuadric textbook_surface() {
  std::vector<std::string> vars{"x1", "x2", "x3"};
  return AffineQuadric::from_polynomial(
      Polynomial::parse("x1*x2 + x3^2 - 1", vars), Field::Q());
}

}  // namespace

TEST_CASE("affine quadric decomposition and homogenization") {
  AffineQuadric X = AffineQuadric::from_polynomial(
      Polynomial::parse("x^2 + 2*x*y - 3*x + 5", {"x", "y", "z"}), Field::Q());
  CHECK(X.n == 3);
  CHECK(X.q.coeff(0, 0) == 1);
  CHECK(X.q.coeff(0, 1) == 2);
  CHECK(X.linear == std::vector<Rational>{-3, 0, 0});
  CHECK(X.constant == 5);
  // Qtilde = q + x0*linear - constant*x0^2
  CHECK(X.homogenization.coeff(0, 0) == -5);
  CHECK(X.homogenization.coeff(0, 1) == -3);
  CHECK(X.homogenization.coeff(1, 2) == 2);

  CHECK_THROWS_AS(AffineQuadric::from_polynomial(
                      Polynomial::parse("x + 1", {"x", "y"}), Field::Q()),
                  std::invalid_argument);
}

TEST_CASE("the hand-checked family on x1*x2 + x3^2 = 1") {
  AffineQuadric X = textbook_surface();
  AutomorphismFamily fam = ga_family(X, 10);
  CHECK(fam.kind == FamilyCase::SiegelTransvection);
  CHECK(fam.x == std::vector<Int>{1, 0, 0});
  REQUIRE(fam.y.has_value());
  CHECK(*fam.y == std::vector<Int>{0, 0, 1});

  // phi_t = (x1 - t^2 x2 - 2 t x3, x2, x3 + t x2)
  std::vector<std::string> zt{"x1", "x2", "x3", "t"};
  CHECK(fam.family.components[0] ==
        Polynomial::parse("x1 - t^2*x2 - 2*t*x3", zt));
  CHECK(fam.family.components[1] == Polynomial::parse("x2", zt));
  CHECK(fam.family.components[2] == Polynomial::parse("x3 + t*x2", zt));
}

TEST_CASE("family errors") {
  CHECK_THROWS_AS(ga_family(AffineQuadric::from_polynomial(
                                Polynomial::parse("x1^2 + x2^2 + x3^2 - 1",
                                                  {"x1", "x2", "x3"}),
                                Field::R()),
                            20),
                  AnisotropicPart);
  CHECK_THROWS_AS(ga_family(AffineQuadric::from_polynomial(
                                Polynomial::parse("x1^2 - 1", {"x1"}), Field::Q()),
                            20),
                  DimensionTooSmall);
  // isotropic over R but no rational witness in reach: x^2 - 7 y^2 - ...
  CHECK_THROWS_AS(ga_family(AffineQuadric::from_polynomial(
                                Polynomial::parse("x1^2 - 7*x2^2 + x3^2 + x1 + 1",
                                                  {"x1", "x2", "x3"}),
                                Field::R()),
                            20),
                  WitnessNotFound);
}

TEST_CASE("radical case produces a translation family") {
  // q = x1^2 with two radical directions
  AffineQuadric X = AffineQuadric::from_polynomial(
      Polynomial::parse("x1^2 - 1", {"x1", "x2", "x3"}), Field::Q());
  AutomorphismFamily fam = ga_family(X, 10);
  CHECK(fam.kind == FamilyCase::Radical);
  CHECK(fam.radical_functional == 0);
  // the family translates along the witness direction
  std::vector<std::string> zt{"x1", "x2", "x3", "t"};
  CHECK(fam.family.components[0] == Polynomial::parse("x1", zt));
}

TEST_CASE("random isotropic families verify exactly") {
  std::mt19937 rng(83);
  std::uniform_int_distribution<int> dim_pick(3, 5), coeff(-10, 10), cpick(-1, 1);
  int done = 0;
  while (done < 25) {
    int n = dim_pick(rng);
    std::vector<Rational> d(n);
    bool zero = false;
    for (auto& e : d) {
      int c = coeff(rng);
      zero = zero || c == 0;
      e = c;
    }
    if (zero) continue;
    QuadraticForm q = QuadraticForm::diagonal(Field::Q(), d);
    if (!is_isotropic(q)) continue;
    auto vars = QuadraticForm::default_vars(n);
    Polynomial f = q.to_polynomial(vars) +
                   Polynomial::constant(cpick(rng)).with_variables(vars);
    if (f.total_degree() != 2) continue;
    AffineQuadric X = AffineQuadric::from_polynomial(f, Field::Q());
    try {
      AutomorphismFamily fam = ga_family(X, 60);
      ++done;  // construction already verifies both identities exactly
      CHECK(fam.family.components.size() == size_t(n));
    } catch (const WitnessNotFound&) {
      continue;
    }
  }
}

TEST_CASE("invariant basis on the hand-checked family") {
  AffineQuadric X = textbook_surface();
  AutomorphismFamily fam = ga_family(X, 10);

  auto b0 = invariant_basis(X, fam, 0);
  CHECK(b0.size() == 1);  // constants only
  CHECK(b0[0] == Polynomial::constant(1).with_variables(X.f.variables()));

  auto b1 = invariant_basis(X, fam, 1);
  bool has_x2 = false;
  for (const auto& h : b1)
    if (h == Polynomial::variable("x2", X.f.variables())) has_x2 = true;
  CHECK(has_x2);
  CHECK(b1.size() == 2);  // 1 and x2

  auto b2 = invariant_basis(X, fam, 2);
  CHECK(b2.size() > b1.size());
  bool has_x2sq = false;
  Polynomial x2 = Polynomial::variable("x2", X.f.variables());
  for (const auto& h : b2)
    if (h == x2 * x2) has_x2sq = true;
  CHECK(has_x2sq);

  // dimensions grow with the degree (restriction of polynomials in x2, f)
  auto b3 = invariant_basis(X, fam, 3);
  auto b4 = invariant_basis(X, fam, 4);
  CHECK(b3.size() > b2.size());
  CHECK(b4.size() > b3.size());

  // every basis element is genuinely invariant: rechecked through twist
  for (const auto& h : b2) CHECK_NOTHROW(twist(X, fam, h));
}

TEST_CASE("twists on hand-checked inputs") {
  AffineQuadric X = textbook_surface();
  AutomorphismFamily fam = ga_family(X, 10);
  const auto& vars = X.f.variables();

  // g = 0 gives the identity map
  PolyMap id = twist(X, fam, Polynomial().with_variables(vars));
  for (size_t i = 0; i < vars.size(); ++i)
    CHECK(id.components[i] == Polynomial::variable(vars[i], vars));

  // g = 1 is the time-1 flow; matches substituting t = 1
  PolyMap at1 = twist(X, fam, Polynomial::constant(1).with_variables(vars));
  std::map<std::string, Polynomial> t1;
  for (const auto& v : vars) t1.emplace(v, Polynomial::variable(v, vars));
  t1.emplace("t", Polynomial::constant(1).with_variables(vars));
  for (size_t i = 0; i < vars.size(); ++i)
    CHECK(at1.components[i] == fam.family.components[i].substitute(t1));

  // g = x2 gives the degree-3 automorphism from the displayed family
  PolyMap tw = twist(X, fam, Polynomial::variable("x2", vars));
  CHECK(tw.components[0] ==
        Polynomial::parse("x1 - x2^3 - 2*x2*x3", vars));
  CHECK(tw.components[2] == Polynomial::parse("x3 + x2^2", vars));
  CHECK(compose(X.f, vars, tw) == X.f);

  // twist(g) then twist(-g) is the identity
  PolyMap back = twist(X, fam, -Polynomial::variable("x2", vars));
  PolyMap round = compose(back, tw);
  for (size_t i = 0; i < vars.size(); ++i)
    CHECK(round.components[i] == Polynomial::variable(vars[i], vars));

  CHECK_THROWS_AS(twist(X, fam, Polynomial::variable("x1", vars)), NotInvariant);
}

TEST_CASE("twists by distinct invariants are distinct automorphisms") {
  AffineQuadric X = textbook_surface();
  AutomorphismFamily fam = ga_family(X, 10);
  auto basis = invariant_basis(X, fam, 2);
  std::vector<PolyMap> twists;
  for (const auto& g : basis) twists.push_back(twist(X, fam, g));
  for (size_t i = 0; i < twists.size(); ++i)
    for (size_t j = i + 1; j < twists.size(); ++j) CHECK(!(twists[i] == twists[j]));
}

TEST_CASE("check_automorphism on hand-checked inputs") {
  std::vector<std::string> vars{"x1", "x2", "x3"};
  AffineQuadric sphere = AffineQuadric::from_polynomial(
      Polynomial::parse("x1^2 + x2^2 + x3^2 - 1", vars), Field::Q());

  PolyMap identity{{Polynomial::variable("x1", vars), Polynomial::variable("x2", vars),
                    Polynomial::variable("x3", vars)},
                   vars,
                   {}};
  CHECK(check_automorphism(sphere, identity));

  PolyMap permuted{{Polynomial::variable("x2", vars), Polynomial::variable("x3", vars),
                    Polynomial::variable("x1", vars)},
                   vars,
                   {}};
  CHECK(check_automorphism(sphere, permuted));

  PolyMap signed_perm{{-Polynomial::variable("x2", vars), Polynomial::variable("x1", vars),
                       -Polynomial::variable("x3", vars)},
                      vars,
                      {}};
  CHECK(check_automorphism(sphere, signed_perm));

  PolyMap shifted{{Polynomial::parse("x1 + 1", vars), Polynomial::variable("x2", vars),
                   Polynomial::variable("x3", vars)},
                  vars,
                  {}};
  CHECK(!check_automorphism(sphere, shifted));

  // accepts every generator the family machinery produces
  AffineQuadric X = textbook_surface();
  AutomorphismFamily fam = ga_family(X, 10);
  for (const auto& g : invariant_basis(X, fam, 2)) {
    Polynomial multiplier;
    CHECK(check_automorphism(X, twist(X, fam, g), &multiplier));
    CHECK(multiplier == Polynomial::constant(1).with_variables(multiplier.variables()));
  }

  // rejects random affine perturbations of the identity
  std::mt19937 rng(91);
  std::uniform_int_distribution<int> pick(-3, 3);
  int rejected = 0;
  for (int trial = 0; trial < 20; ++trial) {
    PolyMap cand;
    cand.source_vars = vars;
    bool perturbed = false;
    for (const auto& v : vars) {
      Polynomial comp = Polynomial::variable(v, vars);
      int a = pick(rng), b = pick(rng);
      if (a != 0) {
        comp += Polynomial::constant(a).with_variables(vars);
        perturbed = true;
      }
      if (b != 0) {
        comp += Polynomial::variable(vars[trial % vars.size()], vars) * Rational(b);
        perturbed = true;
      }
      cand.components.push_back(comp);
    }
    if (!perturbed) continue;
    if (!check_automorphism(sphere, cand)) ++rejected;
  }
  CHECK(rejected >= 15);  // random perturbations essentially never preserve f
}

TEST_CASE("group verdicts on hand-checked inputs") {
  // S^2 over R: i1 = 1, named orthogonal group
  AffineQuadric s2 = AffineQuadric::from_polynomial(
      Polynomial::parse("x1^2 + x2^2 + x3^2 - 1", {"x1", "x2", "x3"}), Field::R());
  GroupVerdict v1 = group_verdict(s2, 50);
  CHECK(v1.verdict == GroupKind::PGO_W_in_V);
  CHECK(v1.named_group == "O(3)");

  // S^3 over R: i1 = 2, open
  AffineQuadric s3 = AffineQuadric::from_polynomial(
      Polynomial::parse("x1^2 + x2^2 + x3^2 + x4^2 - 1", {"x1", "x2", "x3", "x4"}),
      Field::R());
  GroupVerdict v2 = group_verdict(s3, 50);
  CHECK(v2.verdict == GroupKind::Unknown);
  CHECK(*v2.i1->value == 2);

  GroupVerdict v3 = group_verdict(textbook_surface(), 50);
  CHECK(v3.verdict == GroupKind::InfiniteDimensional);
  CHECK(v3.witness_family.has_value());

  GroupVerdict v4 = group_verdict_complement(
      QuadraticForm::diagonal(Field::Q(), {1, 1, 1, 7}), 50);
  CHECK(v4.verdict == GroupKind::PGO_V);
  CHECK(!v4.named_group.has_value());

  // undetermined i1 propagates
  GroupVerdict v5 = group_verdict_complement(
      QuadraticForm::diagonal(Field::Q(), std::vector<Rational>(10, Rational(1))), 50);
  CHECK(v5.verdict == GroupKind::Undetermined);
}

TEST_CASE("families work over F_p") {
  std::vector<std::string> vars{"x1", "x2", "x3"};
  AffineQuadric X = AffineQuadric::from_polynomial(
      Polynomial::parse("x1*x2 + x3^2 - 1", vars), Field::Fp(5));
  AutomorphismFamily fam = ga_family(X, 10);
  CHECK(fam.family.components.size() == 3);

  GroupVerdict v = group_verdict(X, 10);
  CHECK(v.verdict == GroupKind::InfiniteDimensional);

  auto basis = invariant_basis(X, fam, 1);
  CHECK(basis.size() >= 2);
  for (const auto& g : basis) CHECK_NOTHROW(twist(X, fam, g));

  // anisotropic conic over F_5 (-2 = 3 is a nonsquare mod 5)
  AffineQuadric small = AffineQuadric::from_polynomial(
      Polynomial::parse("x1^2 + 2*x2^2 - 1", {"x1", "x2"}), Field::Fp(5));
  GroupVerdict vs = group_verdict(small, 10);
  CHECK(vs.verdict == GroupKind::PGO_W_in_V);
}
