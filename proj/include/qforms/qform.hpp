#pragma once

#include "qforms/exactnum.hpp"
#include "qforms/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qf {

struct ZeroScalar : std::runtime_error {
  ZeroScalar() : std::runtime_error("scalar must be nonzero") {}
};

/// Base field: Q, R, or F_p with p an odd prime (char 2 is out of scope).
struct Field {
  enum class Kind { Q, R, Fp };
  Kind kind{Kind::Q};
  Int p{0};

  static Field Q() { return {Kind::Q, 0}; }
  static Field R() { return {Kind::R, 0}; }
  static Field Fp(const Int& p);

  bool is_Q() const { return kind == Kind::Q; }
  bool is_R() const { return kind == Kind::R; }
  bool is_Fp() const { return kind == Kind::Fp; }
  bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const Field& o) const { return !(*this == o); }
  std::string str() const;
};

/// Quadratic form q(x) = sum_{i<=j} c_ij x_i x_j, stored as the literal
/// upper-triangular coefficients of the defining polynomial. The
/// symmetrized Gram data is B_ii = c_ii, B_ij = c_ij / 2 (char != 2).
/// Over F_p all coefficients are kept reduced into [0, p).
class QuadraticForm {
 public:
  QuadraticForm(Field field, int dim);
  static QuadraticForm diagonal(Field field, const std::vector<Rational>& entries);
  /// Builds a form from a homogeneous degree-2 polynomial; the variable
  /// order of the polynomial fixes the coordinate order.
  static QuadraticForm from_polynomial(const Polynomial& p, Field field);

  const Field& field() const { return field_; }
  int dim() const { return dim_; }

  Rational coeff(int i, int j) const;           // unordered pair access
  void set_coeff(int i, int j, const Rational& c);
  const std::map<std::pair<int, int>, Rational>& coeffs() const { return coeffs_; }

  bool is_diagonal() const;
  std::vector<Rational> diagonal_entries() const;  // valid when is_diagonal()

  Rational evaluate(const std::vector<Rational>& x) const;
  Rational evaluate(const std::vector<Int>& x) const;
  /// Polarization q(x+y) - q(x) - q(y).
  Rational polar(const std::vector<Rational>& x, const std::vector<Rational>& y) const;

  /// Gram matrix entry B_ij (exact; division by 2 is harmless, char != 2).
  Rational gram(int i, int j) const;

  Polynomial to_polynomial(const std::vector<std::string>& vars) const;
  static std::vector<std::string> default_vars(int dim, const std::string& stem = "x");

  /// Reduces a rational into the canonical residue [0, p) over F_p.
  Rational reduce(const Rational& c) const;

 private:
  Field field_;
  int dim_;
  std::map<std::pair<int, int>, Rational> coeffs_;
};

/// Exact diagonalization: q(C y) = sum_i d_i y_i^2 with C invertible;
/// columns of `basis` are the new basis vectors. Zero entries (the
/// radical) come last.
struct Diagonalization {
  std::vector<Rational> diagonal;
  std::vector<std::vector<Rational>> basis;  // basis[i] = i-th column
};
Diagonalization diagonalize(const QuadraticForm& q);

/// The classical invariant set. Over Q the set (dim, det, signature,
/// Hasse symbols) is complete for nondegenerate forms; all entries refer
/// to the nondegenerate part, with the radical split off first.
/// Hasse convention: s_v = prod_{i<j} (a_i, a_j)_v over a diagonalization.
struct FormInvariants {
  Field field;
  int dimension = 0;           // dimension of the nondegenerate part
  int radical_dimension = 0;
  SquareClass det{1};
  SquareClass disc{1};         // (-1)^{d(d-1)/2} * det, d = dimension
  std::optional<std::pair<int, int>> signature;  // (positives, negatives)
  std::map<Place, int> hasse;  // only places with symbol -1 are stored

  int hasse_at(const Place& v) const;
  /// Every place that can carry a nontrivial symbol for this form.
  std::vector<Place> support() const;
  bool operator==(const FormInvariants& o) const;
};

FormInvariants invariants(const QuadraticForm& q);

/// Complete equivalence test per field: over Q by (dim, det, signature,
/// Hasse), over R by signature, over F_p by (dim, det square class);
/// radical dimensions are compared first.
bool is_equivalent(const QuadraticForm& a, const QuadraticForm& b);
bool equivalent_invariants(const FormInvariants& a, const FormInvariants& b);

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b);
QuadraticForm scale(const Rational& c, const QuadraticForm& q);
/// Tensor product on diagonal representatives: for q2 = <e_1,...,e_m>,
/// the result is e_1*q1 ⊥ ... ⊥ e_m*q1 (first factor varies fastest).
QuadraticForm tensor(const QuadraticForm& a, const QuadraticForm& b);

}  // namespace qf
