#pragma once

#include "qforms/qform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qf {

struct IsotropicInput : std::runtime_error {
  IsotropicInput() : std::runtime_error("form must be anisotropic") {}
};

struct UnsupportedField : std::runtime_error {
  explicit UnsupportedField(const std::string& what) : std::runtime_error(what) {}
};

/// Isotropy decision at the invariant level. Over Q this is the
/// Hasse-Minkowski local-global test over the finitely many places that
/// can carry nontrivial data; over R it reads the signature; over F_p it
/// is the classical dimension case split. Exact, no search involved.
bool is_isotropic(const FormInvariants& inv);
bool is_isotropic(const QuadraticForm& q);

/// Local isotropy of the nondegenerate part at one place (field Q).
bool is_isotropic_at(const FormInvariants& inv, const Place& v);
/// Local hyperbolicity of the nondegenerate part at one place (field Q).
bool is_hyperbolic_at(const FormInvariants& inv, const Place& v);

/// Witt (Clifford) invariant at a place, computed from the Hasse symbol
/// by the standard dimension mod 8 adjustment.
int clifford_at(const FormInvariants& inv, const Place& v);
/// +1 at every place (including the real one).
bool clifford_trivial(const FormInvariants& inv);

/// Deterministic search for a primitive integer vector with q(x) = 0.
/// For diagonal forms over Q the search is exhaustive over sup-norm <=
/// height_bound (meet-in-the-middle); otherwise small shells are
/// enumerated directly and a diagonalize-and-pull-back step follows, with
/// the bound then applying in the diagonalized coordinates. A nullopt is
/// "not found within the budget", never a proof of anisotropy.
std::optional<std::vector<Int>> isotropic_witness(const QuadraticForm& q,
                                                  int height_bound);

struct WittDecomposition {
  int witt_index = 0;
  FormInvariants anisotropic;
  int radical_dimension = 0;
};

/// Invariant-level Witt decomposition: splits the radical, then strips
/// hyperbolic planes by the closed-form invariant update (dim -= 2,
/// det -> -det, hasse *= (-1,-det_old)_v, signature -> (p-1, q-1))
/// until the residual invariants are anisotropic.
WittDecomposition witt_decompose(const QuadraticForm& q);
WittDecomposition witt_decompose(FormInvariants inv);

/// Constructive cross-check: finds a witness, splits an explicit
/// hyperbolic plane, recurses. nullopt when some step has no witness
/// within the height bound.
std::optional<WittDecomposition> witt_decompose_constructive(const QuadraticForm& q,
                                                             int height_bound);

struct FirstWittIndexResult {
  std::optional<int> value;  // nullopt = Undetermined
  std::vector<std::string> justification;

  bool determined() const { return value.has_value(); }
};

/// First Witt index of an anisotropic form over Q or R, by the decision
/// table: dim 2; dim 2^a+1 (Hoffmann); definite real forms (Pfister
/// neighbor count); and the dim 4/6/7/8 case analysis over Q. Returns
/// Undetermined when the implemented rules cannot decide. The dim 6/8
/// rules lean on the binary-divisibility engine in ruledness.
FirstWittIndexResult first_witt_index(const QuadraticForm& q);

}  // namespace qf
