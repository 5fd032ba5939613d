#include "qforms/qform.hpp"

#include <algorithm>

namespace qf {

namespace {

Int positive_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int inv_mod(const Int& a, const Int& p) {
  // extended euclid; p prime, a not divisible by p
  Int t = 0, newt = 1, r = p, newr = positive_mod(a, p);
  while (newr != 0) {
    Int q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return positive_mod(t, p);
}

// Smallest positive quadratic nonresidue mod p; the canonical nontrivial
// square class representative over F_p.
Int smallest_nonresidue(const Int& p) {
  for (Int n = 2;; ++n)
    if (legendre(n, p) == -1) return n;
}

}  // namespace

Field Field::Fp(const Int& p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("F_p requires an odd prime");
  return {Kind::Fp, p};
}

std::string Field::str() const {
  switch (kind) {
    case Kind::Q: return "Q";
    case Kind::R: return "R";
    default: return "F" + p.str();
  }
}

QuadraticForm::QuadraticForm(Field field, int dim) : field_(field), dim_(dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

Rational QuadraticForm::reduce(const Rational& c) const {
  if (!field_.is_Fp()) return c;
  const Int& p = field_.p;
  if (denominator(c) % p == 0) throw std::domain_error("denominator divisible by p");
  Int n = positive_mod(numerator(c), p);
  if (denominator(c) == 1) return Rational(n);
  return Rational(positive_mod(n * inv_mod(denominator(c), p), p));
}

QuadraticForm QuadraticForm::diagonal(Field field, const std::vector<Rational>& entries) {
  QuadraticForm q(field, static_cast<int>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i)
    q.set_coeff(static_cast<int>(i), static_cast<int>(i), entries[i]);
  return q;
}

QuadraticForm QuadraticForm::from_polynomial(const Polynomial& p, Field field) {
  int n = static_cast<int>(p.variables().size());
  if (n < 1) throw std::invalid_argument("polynomial has no variables");
  QuadraticForm q(field, n);
  for (const auto& [e, c] : p.terms()) {
    int i = -1, j = -1, total = 0;
    for (size_t k = 0; k < e.size(); ++k) {
      total += e[k];
      if (e[k] == 1) (i < 0 ? i : j) = static_cast<int>(k);
      if (e[k] == 2) i = j = static_cast<int>(k);
    }
    if (total != 2)
      throw std::invalid_argument("polynomial is not homogeneous of degree 2");
    q.set_coeff(i, j, c);
  }
  return q;
}

Rational QuadraticForm::coeff(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void QuadraticForm::set_coeff(int i, int j, const Rational& c) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= dim_) throw std::out_of_range("coefficient index");
  Rational r = reduce(c);
  if (r == 0)
    coeffs_.erase({i, j});
  else
    coeffs_[{i, j}] = r;
}

bool QuadraticForm::is_diagonal() const {
  for (const auto& [ij, c] : coeffs_)
    if (ij.first != ij.second) return false;
  return true;
}

std::vector<Rational> QuadraticForm::diagonal_entries() const {
  std::vector<Rational> d(dim_, 0);
  for (const auto& [ij, c] : coeffs_) {
    if (ij.first != ij.second) throw std::logic_error("form is not diagonal");
    d[ij.first] = c;
  }
  return d;
}

Rational QuadraticForm::evaluate(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("bad vector length");
  Rational out = 0;
  for (const auto& [ij, c] : coeffs_) out += c * x[ij.first] * x[ij.second];
  return field_.is_Fp() ? reduce(out) : out;
}

Rational QuadraticForm::evaluate(const std::vector<Int>& x) const {
  std::vector<Rational> r(x.begin(), x.end());
  return evaluate(r);
}

Rational QuadraticForm::polar(const std::vector<Rational>& x,
                              const std::vector<Rational>& y) const {
  std::vector<Rational> s(x.size());
  for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
  Rational out = evaluate(s) - evaluate(x) - evaluate(y);
  return field_.is_Fp() ? reduce(out) : out;
}

Rational QuadraticForm::gram(int i, int j) const {
  if (i == j) return coeff(i, i);
  Rational c = coeff(i, j);
  if (field_.is_Fp()) return reduce(c * Rational(Int(1), Int(2)));
  return c / 2;
}

Polynomial QuadraticForm::to_polynomial(const std::vector<std::string>& vars) const {
  if (static_cast<int>(vars.size()) != dim_) throw std::invalid_argument("bad variable count");
  Polynomial p(vars);
  for (const auto& [ij, c] : coeffs_) {
    Polynomial::Exponents e(vars.size(), 0);
    e[ij.first] += 1;
    e[ij.second] += 1;
    p.set_coefficient(e, c);
  }
  return p;
}

std::vector<std::string> QuadraticForm::default_vars(int dim, const std::string& stem) {
  std::vector<std::string> vars;
  vars.reserve(dim);
  for (int i = 1; i <= dim; ++i) vars.push_back(stem + std::to_string(i));
  return vars;
}

// ---------------------------------------------------------------------------
// diagonalization

Diagonalization diagonalize(const QuadraticForm& q) {
  const int n = q.dim();
  const bool fp = q.field().is_Fp();

  auto norm = [&](const Rational& c) { return fp ? q.reduce(c) : c; };

  std::vector<std::vector<Rational>> B(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[i][j] = norm(q.gram(i, j));

  std::vector<std::vector<Rational>> C(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) C[i][i] = 1;

  auto col_axpy = [&](int dst, int src, const Rational& f) {
    // basis change e_dst += f * e_src; updates B symmetrically and C
    Rational diag = B[dst][dst] + 2 * f * B[dst][src] + f * f * B[src][src];
    for (int r = 0; r < n; ++r) {
      B[r][dst] = norm(B[r][dst] + f * B[r][src]);
      C[r][dst] = norm(C[r][dst] + f * C[r][src]);
    }
    B[dst][dst] = norm(diag);
    for (int cidx = 0; cidx < n; ++cidx) B[dst][cidx] = B[cidx][dst];
  };
  auto col_swap = [&](int a, int b) {
    if (a == b) return;
    for (int r = 0; r < n; ++r) {
      std::swap(B[r][a], B[r][b]);
      std::swap(C[r][a], C[r][b]);
    }
    for (int cidx = 0; cidx < n; ++cidx) std::swap(B[a][cidx], B[b][cidx]);
  };

  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i)
      if (B[i][i] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) {
      // all remaining diagonal entries vanish; look for an off-diagonal one
      int oi = -1, oj = -1;
      for (int i = k; i < n && oi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (B[i][j] != 0) {
            oi = i;
            oj = j;
            break;
          }
      if (oi < 0) break;  // the rest is the radical
      col_axpy(oi, oj, 1);  // makes B[oi][oi] = 2*B[oi][oj] != 0
      pivot = oi;
    }
    col_swap(k, pivot);
    const Rational d = B[k][k];
    for (int j = k + 1; j < n; ++j) {
      if (B[k][j] == 0) continue;
      col_axpy(j, k, norm(-B[k][j] / d));
    }
  }

  // move the radical (zero diagonal entries) to the back, stably
  Diagonalization out;
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (B[i][i] != 0) order.push_back(i);
  for (int i = 0; i < n; ++i)
    if (B[i][i] == 0) order.push_back(i);
  for (int idx : order) {
    out.diagonal.push_back(B[idx][idx]);
    std::vector<Rational> col(n);
    for (int r = 0; r < n; ++r) col[r] = C[r][idx];
    out.basis.push_back(std::move(col));
  }
  return out;
}

// ---------------------------------------------------------------------------
// invariants

int FormInvariants::hasse_at(const Place& v) const {
  auto it = hasse.find(v);
  return it == hasse.end() ? 1 : it->second;
}

std::vector<Place> FormInvariants::support() const {
  std::vector<SquareClass> classes{det};
  for (const auto& [v, s] : hasse)
    if (!v.is_real()) classes.push_back(SquareClass{v.p});
  return relevant_places(classes);
}

bool FormInvariants::operator==(const FormInvariants& o) const {
  return field == o.field && dimension == o.dimension &&
         radical_dimension == o.radical_dimension && det == o.det &&
         disc == o.disc && signature == o.signature && hasse == o.hasse;
}

FormInvariants invariants(const QuadraticForm& q) {
  Diagonalization d = diagonalize(q);
  FormInvariants inv;
  inv.field = q.field();

  std::vector<Rational> entries;
  for (const auto& e : d.diagonal)
    if (e != 0) entries.push_back(e);
  inv.dimension = static_cast<int>(entries.size());
  inv.radical_dimension = q.dim() - inv.dimension;
  const int m = inv.dimension;
  const int disc_sign = (m * (m - 1) / 2) % 2 == 0 ? 1 : -1;

  if (q.field().is_Fp()) {
    const Int& p = q.field().p;
    Int det = 1;
    for (const auto& e : entries) det = positive_mod(det * numerator(e), p);
    auto canon = [&](const Int& x) -> SquareClass {
      if (x == 0) return SquareClass{1};  // empty product
      return legendre(x, p) == 1 ? SquareClass{1} : SquareClass{smallest_nonresidue(p)};
    };
    inv.det = m == 0 ? SquareClass{1} : canon(det);
    inv.disc = m == 0 ? SquareClass{1} : canon(positive_mod(det * disc_sign, p));
    return inv;
  }

  if (q.field().is_R()) {
    int pos = 0, neg = 0;
    for (const auto& e : entries) (e > 0 ? pos : neg)++;
    inv.signature = {pos, neg};
    inv.det = SquareClass{neg % 2 == 0 ? 1 : -1};
    inv.disc = square_class_mul(inv.det, SquareClass{disc_sign});
    return inv;
  }

  // field Q
  std::vector<SquareClass> classes;
  classes.reserve(entries.size());
  int pos = 0, neg = 0;
  SquareClass det{1};
  for (const auto& e : entries) {
    (e > 0 ? pos : neg)++;
    classes.push_back(square_class_reduce(e));
    det = square_class_mul(det, classes.back());
  }
  inv.signature = {pos, neg};
  inv.det = det;
  inv.disc = square_class_mul(det, SquareClass{disc_sign});
  for (const Place& v : relevant_places(classes)) {
    int s = 1;
    for (size_t i = 0; i < classes.size(); ++i)
      for (size_t j = i + 1; j < classes.size(); ++j)
        s *= hilbert_symbol(classes[i], classes[j], v);
    if (s == -1) inv.hasse[v] = -1;
  }
  return inv;
}

bool equivalent_invariants(const FormInvariants& a, const FormInvariants& b) {
  if (a.field != b.field) throw std::invalid_argument("fields differ");
  if (a.radical_dimension != b.radical_dimension || a.dimension != b.dimension)
    return false;
  switch (a.field.kind) {
    case Field::Kind::R:
      return a.signature == b.signature;
    case Field::Kind::Fp:
      return a.det == b.det;
    default:
      return a.det == b.det && a.signature == b.signature && a.hasse == b.hasse;
  }
}

bool is_equivalent(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.field() != b.field()) throw std::invalid_argument("fields differ");
  return equivalent_invariants(invariants(a), invariants(b));
}

// ---------------------------------------------------------------------------
// constructors

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.field() != b.field()) throw std::invalid_argument("fields differ");
  QuadraticForm out(a.field(), a.dim() + b.dim());
  for (const auto& [ij, c] : a.coeffs()) out.set_coeff(ij.first, ij.second, c);
  for (const auto& [ij, c] : b.coeffs())
    out.set_coeff(ij.first + a.dim(), ij.second + a.dim(), c);
  return out;
}

QuadraticForm scale(const Rational& c, const QuadraticForm& q) {
  if (c == 0) throw ZeroScalar();
  QuadraticForm out(q.field(), q.dim());
  for (const auto& [ij, k] : q.coeffs()) out.set_coeff(ij.first, ij.second, c * k);
  return out;
}

QuadraticForm tensor(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.field() != b.field()) throw std::invalid_argument("fields differ");
  std::vector<Rational> da = diagonalize(a).diagonal;
  std::vector<Rational> db = diagonalize(b).diagonal;
  std::vector<Rational> out;
  out.reserve(da.size() * db.size());
  for (const auto& e : db)
    for (const auto& d : da) out.push_back(d * e);
  return QuadraticForm::diagonal(a.field(), out);
}

}  // namespace qf
