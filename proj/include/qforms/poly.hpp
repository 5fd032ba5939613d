#pragma once

#include "qforms/exactnum.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qf {

struct SyntaxError : std::runtime_error {
  size_t position;
  SyntaxError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

struct UnknownVariable : std::runtime_error {
  explicit UnknownVariable(const std::string& name)
      : std::runtime_error("unknown variable '" + name + "'") {}
};

struct MissingAssignment : std::runtime_error {
  explicit MissingAssignment(const std::string& name)
      : std::runtime_error("no assignment for variable '" + name + "'") {}
};

/// Exact multivariate polynomial over Q with named variables.
///
/// Terms are kept in a canonical graded-lexicographic order over dense
/// exponent vectors; zero coefficients are never stored, so is_zero() and
/// operator== are exact structural checks.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Rational, GradedLex>;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Polynomial constant(const Rational& c);
  static Polynomial variable(const std::string& name,
                             const std::vector<std::string>& vars);

  /// Recursive-descent parser for the expression grammar:
  ///   expr   := ['+'|'-'] term (('+'|'-') term)*
  ///   term   := factor ('*' factor)*
  ///   factor := base ('^' uint)?
  ///   base   := variable | rational | '(' expr ')'
  ///   rational := int ('/' uint)?
  /// Whitespace is insignificant; implicit multiplication is an error.
  static Polynomial parse(const std::string& text,
                          const std::vector<std::string>& vars);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// True iff every coefficient is an integer divisible by p (denominators
  /// must be prime to p). Used for identity checks over F_p.
  bool is_zero_mod(const Int& p) const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(const std::string& var) const;

  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;
  void set_coefficient(const Exponents& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial pow(int e) const;

  /// Semantic equality: variable lists are aligned first.
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Composition: every variable of *this must be assigned.
  Polynomial substitute(const std::map<std::string, Polynomial>& assignment) const;
  Rational evaluate(const std::map<std::string, Rational>& point) const;

  /// Division by a single divisor under the graded-lex order:
  /// *this = quotient * f + remainder, no remainder monomial divisible by
  /// the leading monomial of f. Exact divisibility iff remainder is zero.
  std::pair<Polynomial, Polynomial> divide_by(const Polynomial& f) const;

  /// Deterministic, reparseable rendering; parse(str()) == *this.
  std::string str() const;

  /// Returns copies of a and b over the merged variable list.
  static std::pair<Polynomial, Polynomial> aligned(const Polynomial& a,
                                                   const Polynomial& b);
  Polynomial with_variables(const std::vector<std::string>& vars) const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;

  void insert_term(const Exponents& e, const Rational& c);
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

/// A tuple of polynomials in common source variables, optionally divided
/// by one shared denominator (unused by the polynomial maps built here,
/// kept for rational-map payloads).
struct PolyMap {
  std::vector<Polynomial> components;
  std::vector<std::string> source_vars;
  std::optional<Polynomial> denominator;

  bool operator==(const PolyMap& o) const;
};

/// Substitutes m.components positionally for target_vars in p.
Polynomial compose(const Polynomial& p,
                   const std::vector<std::string>& target_vars,
                   const PolyMap& m);

/// Composition f(g(x)): f's source variables are fed g's components.
PolyMap compose(const PolyMap& f, const PolyMap& g);

}  // namespace qf
