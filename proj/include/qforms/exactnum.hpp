#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qf {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroInput : std::runtime_error {
  ZeroInput() : std::runtime_error("nonzero value required") {}
};

/// Factorization bound. factorize() rejects inputs with |n| above it.
/// Intended to be set once at startup (e.g. from QFORMS_FACTOR_BOUND).
Int factorization_bound();
void set_factorization_bound(const Int& bound);

bool is_prime(const Int& n);

/// Prime factorization of |n| as (prime, exponent) pairs, primes strictly
/// increasing. The sign of n is the caller's business.
std::vector<std::pair<Int, int>> factorize(const Int& n);

/// An element of Q*/Q*^2, canonicalized as a signed squarefree integer.
struct SquareClass {
  Int rep{1};

  bool trivial() const { return rep == 1; }
  bool operator==(const SquareClass& o) const { return rep == o.rep; }
  bool operator!=(const SquareClass& o) const { return rep != o.rep; }
  bool operator<(const SquareClass& o) const { return rep < o.rep; }
};

/// Squarefree part of r, with sign. Throws ZeroInput on 0.
SquareClass square_class_reduce(const Rational& r);
SquareClass square_class_reduce(const Int& n);

/// Product in Q*/Q*^2. Both inputs are already squarefree, so only the
/// gcd needs to be cancelled; no factorization happens here.
SquareClass square_class_mul(const SquareClass& a, const SquareClass& b);

/// A place of Q: the real place (p == 0) or a finite prime.
struct Place {
  Int p;

  static Place real() { return Place{0}; }
  static Place prime(const Int& q);
  bool is_real() const { return p == 0; }
  bool operator==(const Place& o) const { return p == o.p; }
  bool operator!=(const Place& o) const { return p != o.p; }
  bool operator<(const Place& o) const { return p < o.p; }
  std::string str() const;
};

/// Legendre symbol (a/p) for an odd prime p. Returns 0 when p | a.
int legendre(const Int& a, const Int& p);

/// Hilbert symbol (a,b)_v in {+1,-1}: +1 iff z^2 = a x^2 + b y^2 has a
/// nontrivial solution over the completion of Q at v. Closed-form
/// valuation/Legendre evaluation; the exhaustive p-adic search lives in
/// the tests as an independent oracle.
int hilbert_symbol(const SquareClass& a, const SquareClass& b, const Place& v);

/// True iff a is a square in the completion of Q at v.
bool is_local_square(const SquareClass& a, const Place& v);

/// The real place, 2, and every odd prime dividing one of the classes.
std::vector<Place> relevant_places(const std::vector<SquareClass>& classes);

/// Parses "p", "-p" or "p/q" (q > 0). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
std::string to_string(const Int& n);

}  // namespace qf
