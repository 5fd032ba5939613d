#pragma once

#include "qforms/isotropy.hpp"
#include "qforms/pfister.hpp"
#include "qforms/poly.hpp"
#include "qforms/qform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qf {

struct OddDimension : std::runtime_error {
  OddDimension() : std::runtime_error("binary divisibility needs even dimension") {}
};

/// Certificate that the quadric of b_1 P ⊥ ... ⊥ b_{r-1} P ⊥ b_r P_1 maps
/// onto the quadric of b_1 P ⊥ ... ⊥ b_{r-1} P ⊥ <b_r> by
/// (x_1,...,x_r) -> (x_r x_1, ..., x_r x_{r-1}, P(x_r)), together with the
/// polynomial identity that proves it lands on the target:
///   b_1 P(x_r x_1) + ... + b_{r-1} P(x_r x_{r-1}) + b_r P(x_r)^2
///     - P(x_r) * (b_1 P(x_1) + ... + b_r P_1(x_r))  ==  0
/// with x_r restricted to the P_1 coordinates.
struct RationalMapCertificate {
  Polynomial source_quadric;
  Polynomial target_quadric;
  PolyMap map;
  Polynomial identity;  // identically zero
  bool ruled_by_map = false;  // P_1 of dimension >= 2
  std::optional<QuadraticForm> source_form, target_form;  // rational data only
};

/// Symbolic certificate: Pfister parameters a_i and scalars b_i are
/// polynomial variables, so the identity holds for every specialization.
RationalMapCertificate ahmad_ohm_map(int fold, int p1_dim, int r);
/// Rational certificate for a concrete Pfister form and scalars.
RationalMapCertificate ahmad_ohm_map(const PfisterForm& P, int p1_dim,
                                     const std::vector<Rational>& b);

/// Certificate q ≅ <<b>> ⊗ τ, re-verifiable through is_equivalent.
struct DivisibilityCertificate {
  SquareClass binary_class;
  std::vector<Rational> cofactor;  // diagonal of τ
};

/// Outcome of the dim-6/8 divisibility analysis. `refuted` is a sound
/// "no binary divisor exists" (determinant forcing, or a place where the
/// forced class is a local square while the form is not locally
/// hyperbolic); absence of both certificate and refutation is honest
/// inconclusiveness.
struct BinaryDivisibilityOutcome {
  bool refuted = false;
  std::optional<SquareClass> binary_class;
  std::vector<Rational> cofactor;
  std::vector<std::string> trace;
};
BinaryDivisibilityOutcome analyze_binary_divisibility(const QuadraticForm& q);

/// Searches a certificate with the forced candidate set (dim 6: b =
/// disc(q); dim 8: square classes of negated diagonal pair products).
std::optional<DivisibilityCertificate> binary_divisibility_search(const QuadraticForm& q);
/// Same search over an explicit candidate list.
std::optional<DivisibilityCertificate> binary_divisibility_search(
    const QuadraticForm& q, const std::vector<SquareClass>& candidates);

enum class Ruledness { Ruled, NotRuled, Undetermined, IsotropicRational };

struct RuledVerdict {
  Ruledness verdict = Ruledness::Undetermined;
  FirstWittIndexResult i1;
  std::optional<DivisibilityCertificate> divisibility;
  std::optional<NeighborReport> neighbor;
  std::vector<std::string> trace;
};

/// Ruledness of the projective quadric of an anisotropic form over Q or
/// R, dimensions 3..9: NotRuled iff the first Witt index is 1
/// (Karpenko), Ruled when i1 > 1 with the firing dimension rule and its
/// certificate recorded, Undetermined when i1 is undetermined or the
/// dimension is 10 or more (open). Isotropic input yields the
/// informational IsotropicRational verdict.
RuledVerdict classify_ruledness(const QuadraticForm& q);

/// The quadric x_0^2 + ... + x_n^2 = 0 over R: ruled iff n is not a
/// power of 2; i1 through the definite-form neighbor rule.
RuledVerdict sphere_quadric_ruledness(int n);

}  // namespace qf
