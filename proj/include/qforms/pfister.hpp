#pragma once

#include "qforms/isotropy.hpp"
#include "qforms/poly.hpp"
#include "qforms/qform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qf {

struct FoldOutOfRange : std::runtime_error {
  explicit FoldOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroParameter : std::runtime_error {
  ZeroParameter() : std::runtime_error("Pfister parameters must be nonzero") {}
};

/// n-fold Pfister form <<a_1,...,a_n>>: the tensor product of the binary
/// forms <1,-a_i>. Diagonal entries follow the doubling order
/// D_k = D_{k-1} ++ (-a_k) D_{k-1}, matching the composition algebra
/// coordinates below.
struct PfisterForm {
  int fold;
  std::vector<SquareClass> params;
  QuadraticForm form;
};

PfisterForm pfister(Field field, const std::vector<Rational>& params);
std::vector<Rational> pfister_diagonal(const std::vector<Rational>& params);

/// Cayley-Dickson composition algebra of dimension 2^fold over the
/// polynomial ring: entries, parameters and results are exact
/// polynomials, so one call with symbolic parameters proves an identity
/// for every parameter value at once. Doubling convention:
///   (u,v)(w,z) = (uw + γ z̄v, zu + v w̄),   conj(u,v) = (ū, -v).
std::vector<Polynomial> cd_multiply(int fold, const std::vector<Polynomial>& params,
                                    const std::vector<Polynomial>& x,
                                    const std::vector<Polynomial>& y);
std::vector<Polynomial> cd_conjugate(const std::vector<Polynomial>& x);
/// Norm form N(x) = sum of (signed parameter subset product) * x_i^2.
Polynomial cd_norm(const std::vector<Polynomial>& params,
                   const std::vector<Polynomial>& x);

/// The multiplication as a PolyMap in 2 * 2^fold source variables, with
/// the strong multiplicativity certificate N(xy) - N(x)N(y) (an exact
/// zero polynomial, verified at construction). fold <= 3: composition
/// multiplication is bilinear only up to the octonions.
struct CdMultiplication {
  int fold;
  std::vector<std::string> x_vars, y_vars, param_vars;
  PolyMap map;
  Polynomial certificate;  // identically zero
};
CdMultiplication cayley_dickson_multiply(int fold);  // symbolic parameters
CdMultiplication cayley_dickson_multiply(int fold, const std::vector<Rational>& params);

/// Hopf map (x, y) -> (N(x) - N(y), 2 x ybar) built from the all-(-1)
/// composition algebra; the certificate
///   (N(x)-N(y))^2 + N(2 x ybar) - (N(x)+N(y))^2
/// normalizes to zero, so unit spheres map to unit spheres.
/// fold 1, 2, 3 give S^3->S^2, S^7->S^4, S^15->S^8.
struct HopfMap {
  int fold;
  PolyMap map;
  Polynomial certificate;  // identically zero
};
HopfMap hopf_map(int fold);

enum class Tri { Yes, No, Undetermined };

/// Pfister-neighbor analysis of an anisotropic form. Sound but
/// incomplete; Undetermined is a legal verdict. Yes answers carry an
/// invariant-level certificate: q is equivalent to
/// similarity * (alpha ⊥ scalar * alpha') and the certificate is
/// re-verified with is_equivalent before being reported.
struct NeighborReport {
  Tri is_neighbor = Tri::Undetermined;
  Tri is_special = Tri::Undetermined;
  std::optional<int> fold;
  // certificate data, present on Yes answers
  std::vector<Rational> alpha_params;     // (n-1)-fold Pfister parameters
  std::vector<Rational> alpha_prime;      // diagonal of the subform
  std::optional<Rational> scalar;         // c in alpha ⊥ c*alpha'
  std::optional<Rational> similarity;     // overall similarity factor
  std::vector<std::string> trace;
};

NeighborReport neighbor_analysis(const QuadraticForm& q);

}  // namespace qf
