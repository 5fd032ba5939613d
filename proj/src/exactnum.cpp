#include "qforms/exactnum.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qf {

namespace {

Int& bound_ref() {
  static Int bound = Int(1) << 64;
  return bound;
}

Int positive_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int powmod(Int base, Int exp, const Int& mod) {
  base = positive_mod(base, mod);
  Int result = 1;
  while (exp > 0) {
    if (bit_test(exp, 0)) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial
// factor of n (n odd composite, not a prime power edge case handled by
// retrying with a different increment).
Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  for (Int c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    Int saved = 1;
    int lam = 0, power = 1;
    while (d == 1) {
      if (lam == power) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = (y * y + c) % n;
      ++lam;
      saved = saved * positive_mod(x - y, n) % n;
      if (lam % 64 == 0 || lam == power) {
        d = gcd(saved, n);
        saved = 1;
      }
    }
    if (d != n) return d;
  }
}

void factor_into(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

int epsilon_mod2(const Int& u) {  // (u-1)/2 mod 2 for odd u
  return positive_mod(u, 4) == 1 ? 0 : 1;
}

int omega_mod2(const Int& u) {  // (u^2-1)/8 mod 2 for odd u
  Int m = positive_mod(u, 8);
  return (m == 1 || m == 7) ? 0 : 1;
}

}  // namespace

Int factorization_bound() { return bound_ref(); }

void set_factorization_bound(const Int& bound) {
  if (bound < 2) throw std::invalid_argument("factorization bound must be >= 2");
  bound_ref() = bound;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  return boost::multiprecision::miller_rabin_test(n, 32);
}

std::vector<std::pair<Int, int>> factorize(const Int& n) {
  if (n == 0) throw ZeroInput();
  Int m = abs(n);
  if (m > factorization_bound())
    throw BoundExceeded("factorization input exceeds bound: " + m.str());
  std::map<Int, int> factors;
  for (Int p : {Int(2), Int(3), Int(5)}) {
    while (m % p == 0) {
      factors[p] += 1;
      m /= p;
    }
  }
  // wheel over 6k-1, 6k+1 up to 10^6, then Pollard rho for what remains
  for (Int p = 5; p <= 1000000 && p * p <= m; p += 6) {
    while (m % p == 0) {
      factors[p] += 1;
      m /= p;
    }
    Int q = p + 2;
    while (m % q == 0) {
      factors[q] += 1;
      m /= q;
    }
  }
  if (m > 1) factor_into(m, factors);
  return {factors.begin(), factors.end()};
}

SquareClass square_class_reduce(const Int& n) {
  if (n == 0) throw ZeroInput();
  Int rep = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2 != 0) rep *= p;
  return SquareClass{rep};
}

SquareClass square_class_reduce(const Rational& r) {
  if (r == 0) throw ZeroInput();
  // num/den = num*den modulo squares; factor the two halves separately so
  // each stays within the factorization bound.
  SquareClass num = square_class_reduce(numerator(r));
  SquareClass den = square_class_reduce(denominator(r));
  return square_class_mul(num, den);
}

SquareClass square_class_mul(const SquareClass& a, const SquareClass& b) {
  Int g = gcd(abs(a.rep), abs(b.rep));
  return SquareClass{(a.rep / g) * (b.rep / g)};
}

Place Place::prime(const Int& q) {
  if (!is_prime(q)) throw std::invalid_argument("not a prime: " + q.str());
  return Place{q};
}

std::string Place::str() const { return is_real() ? "real" : p.str(); }

int legendre(const Int& a, const Int& p) {
  Int r = positive_mod(a, p);
  if (r == 0) return 0;
  Int e = powmod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

int hilbert_symbol(const SquareClass& a, const SquareClass& b, const Place& v) {
  const Int& x = a.rep;
  const Int& y = b.rep;
  if (v.is_real()) return (x < 0 && y < 0) ? -1 : 1;
  if (v.p == 2) {
    int alpha = (x % 2 == 0) ? 1 : 0;  // squarefree: valuation is 0 or 1
    int beta = (y % 2 == 0) ? 1 : 0;
    Int u = alpha ? x / 2 : x;
    Int w = beta ? y / 2 : y;
    int e = epsilon_mod2(u) * epsilon_mod2(w) + alpha * omega_mod2(w) +
            beta * omega_mod2(u);
    return e % 2 == 0 ? 1 : -1;
  }
  const Int& p = v.p;
  int alpha = (x % p == 0) ? 1 : 0;
  int beta = (y % p == 0) ? 1 : 0;
  Int u = alpha ? x / p : x;
  Int w = beta ? y / p : y;
  int s = 1;
  if (alpha && beta && legendre(-1, p) == -1) s = -s;
  if (beta) s *= legendre(u, p);
  if (alpha) s *= legendre(w, p);
  return s;
}

bool is_local_square(const SquareClass& a, const Place& v) {
  if (v.is_real()) return a.rep > 0;
  if (v.p == 2) return a.rep % 2 != 0 && positive_mod(a.rep, 8) == 1;
  if (a.rep % v.p == 0) return false;
  return legendre(a.rep, v.p) == 1;
}

std::vector<Place> relevant_places(const std::vector<SquareClass>& classes) {
  std::set<Int> primes{2};
  for (const auto& c : classes)
    for (const auto& [p, e] : factorize(c.rep)) primes.insert(p);
  std::vector<Place> places{Place::real()};
  for (const auto& p : primes) places.push_back(Place{p});
  return places;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("bad rational: '" + text + "'"); };
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) throw bad();
    size_t i = (allow_sign && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw bad();
    for (; i < part.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(part[i]))) throw bad();
  };
  if (slash == std::string::npos) {
    check_int(s, true);
    return Rational(Int(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check_int(num, true);
  check_int(den, false);
  Int d(den);
  if (d == 0) throw bad();
  return Rational(Int(num), d);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const Int& n) { return n.str(); }

}  // namespace qf
