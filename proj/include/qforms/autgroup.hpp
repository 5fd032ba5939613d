#pragma once

#include "qforms/isotropy.hpp"
#include "qforms/poly.hpp"
#include "qforms/qform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qf {

struct AnisotropicPart : std::runtime_error {
  AnisotropicPart()
      : std::runtime_error("degree-2 part is anisotropic; no additive family exists") {}
};

struct DimensionTooSmall : std::runtime_error {
  DimensionTooSmall() : std::runtime_error("construction needs at least 3 variables") {}
};

struct WitnessNotFound : std::runtime_error {
  WitnessNotFound()
      : std::runtime_error("no isotropic vector found within the height bound") {}
};

struct NotInvariant : std::runtime_error {
  NotInvariant() : std::runtime_error("polynomial is not invariant under the family") {}
};

/// An affine quadric {f = 0} for a degree-2 polynomial f, together with
/// its degree-2 part q on W and the recorded homogenization on V:
///   Qtilde = q + x0 * (linear part) - (constant) * x0^2,  W = {x0 = 0},
/// with x0 the leading coordinate of V. The affine family constructions
/// only ever use the restriction to the chart x0 = 1, where the sign of
/// the x0^2 term cancels.
struct AffineQuadric {
  Polynomial f;
  Field field;
  int n = 0;  // number of affine variables
  QuadraticForm q;               // degree-2 part, on W
  QuadraticForm homogenization;  // on V = k x0 + W
  std::vector<Rational> linear;  // linear coefficients of f
  Rational constant;             // constant term of f
  std::string convention = "Qtilde = q + x0*linear - constant*x0^2; W = {x0 = 0}";

  static AffineQuadric from_polynomial(const Polynomial& f, Field field);
  /// Wraps a homogeneous form as the cone {q = 0} (used for the
  /// projective-complement constructions).
  static AffineQuadric from_form(const QuadraticForm& q);
};

enum class FamilyCase { Radical, SiegelTransvection };

/// One-parameter family phi_t of automorphisms of the affine quadric,
/// verified at construction: f(phi_t(z)) = f(z) and phi_s(phi_t(z)) =
/// phi_{s+t}(z) hold as exact polynomial identities in (z, s, t) (over
/// F_p: coefficient-wise mod p).
struct AutomorphismFamily {
  PolyMap family;                 // components in (z-vars, t)
  std::string parameter;          // name of t
  FamilyCase kind = FamilyCase::SiegelTransvection;
  std::vector<Int> x;             // the isotropic vector used
  std::optional<std::vector<Int>> y;  // transvection partner
  std::optional<int> radical_functional;  // index of the dual functional g (Radical case)
};

/// Builds the additive family attached to an isotropic vector of the
/// degree-2 part: the translation-type family z + t g(z) x when x is
/// orthogonal to all of V, the Siegel transvection restricted to the
/// affine chart otherwise.
AutomorphismFamily ga_family(const AffineQuadric& X, int height_bound);

/// Exact basis of {h : deg h <= degree, h(phi_t(z)) = h(z)}; computed by
/// rational (or mod-p) kernel reduction on the coefficient space, in
/// reduced row echelon form for determinism.
std::vector<Polynomial> invariant_basis(const AffineQuadric& X,
                                        const AutomorphismFamily& fam, int degree);

/// The automorphism z -> phi_{g(z)}(z) for an invariant g. Verified:
/// preserves f exactly, and twist(g) then twist(-g) is the identity.
PolyMap twist(const AffineQuadric& X, const AutomorphismFamily& fam,
              const Polynomial& g);

/// True iff f(candidate(z)) is divisible by f; the quotient is recorded
/// through the optional out-parameter.
bool check_automorphism(const AffineQuadric& X, const PolyMap& candidate,
                        Polynomial* multiplier = nullptr);

enum class GroupKind { InfiniteDimensional, PGO_W_in_V, PGO_V, Unknown, Undetermined };

struct GroupVerdict {
  GroupKind verdict = GroupKind::Undetermined;
  std::optional<std::string> named_group;
  std::optional<FirstWittIndexResult> i1;
  std::optional<AutomorphismFamily> witness_family;
  std::vector<std::string> trace;
};

/// Automorphism-group verdict for the affine quadric {f = 0}: isotropic
/// degree-2 part of dimension >= 3 gives InfiniteDimensional (with a
/// family as witness when one is found); anisotropic with i1 = 1 gives
/// PGO(W in V), named O(n+1) for the real unit sphere; anisotropic with
/// determined i1 > 1 is Unknown (open); undetermined i1 stays
/// Undetermined.
GroupVerdict group_verdict(const AffineQuadric& X, int height_bound);

/// Same analysis for the complement P^{n-1} - {q = 0}; the anisotropic
/// i1 = 1 verdict is PGO(V).
GroupVerdict group_verdict_complement(const QuadraticForm& q, int height_bound);

}  // namespace qf
