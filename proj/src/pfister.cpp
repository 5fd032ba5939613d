#include "qforms/pfister.hpp"

#include <algorithm>

namespace qf {

namespace {

void check_fold(int fold, int max_fold, const char* what) {
  if (fold < 1 || fold > max_fold)
    throw FoldOutOfRange(std::string(what) + ": fold must be in [1," +
                         std::to_string(max_fold) + "], got " + std::to_string(fold));
}

std::vector<std::string> numbered(const std::string& stem, int count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace

std::vector<Rational> pfister_diagonal(const std::vector<Rational>& params) {
  std::vector<Rational> diag{1};
  for (const auto& a : params) {
    size_t sz = diag.size();
    for (size_t i = 0; i < sz; ++i) diag.push_back(-a * diag[i]);
  }
  return diag;
}

PfisterForm pfister(Field field, const std::vector<Rational>& params) {
  check_fold(static_cast<int>(params.size()), 4, "pfister");
  for (const auto& a : params)
    if (a == 0) throw ZeroParameter();
  PfisterForm out{static_cast<int>(params.size()), {},
                  QuadraticForm::diagonal(field, pfister_diagonal(params))};
  if (field.is_Q() || field.is_R())
    for (const auto& a : params) out.params.push_back(square_class_reduce(a));
  return out;
}

std::vector<Polynomial> cd_conjugate(const std::vector<Polynomial>& x) {
  std::vector<Polynomial> out = x;
  for (size_t i = 1; i < out.size(); ++i) out[i] = -out[i];
  return out;
}

std::vector<Polynomial> cd_multiply(int fold, const std::vector<Polynomial>& params,
                                    const std::vector<Polynomial>& x,
                                    const std::vector<Polynomial>& y) {
  if (fold == 0) return {x[0] * y[0]};
  const size_t half = x.size() / 2;
  auto split = [half](const std::vector<Polynomial>& v) {
    return std::make_pair(std::vector<Polynomial>(v.begin(), v.begin() + half),
                          std::vector<Polynomial>(v.begin() + half, v.end()));
  };
  auto [u, v] = split(x);
  auto [w, z] = split(y);
  const Polynomial& gamma = params[fold - 1];
  std::vector<Polynomial> inner(params.begin(), params.begin() + fold - 1);

  // (u,v)(w,z) = (uw + γ z̄v, zu + v w̄)
  std::vector<Polynomial> first = cd_multiply(fold - 1, inner, cd_conjugate(z), v);
  std::vector<Polynomial> uw = cd_multiply(fold - 1, inner, u, w);
  std::vector<Polynomial> second = cd_multiply(fold - 1, inner, z, u);
  std::vector<Polynomial> vwbar = cd_multiply(fold - 1, inner, v, cd_conjugate(w));

  std::vector<Polynomial> out;
  out.reserve(x.size());
  for (size_t i = 0; i < half; ++i) out.push_back(uw[i] + gamma * first[i]);
  for (size_t i = 0; i < half; ++i) out.push_back(second[i] + vwbar[i]);
  return out;
}

Polynomial cd_norm(const std::vector<Polynomial>& params, const std::vector<Polynomial>& x) {
  std::vector<Polynomial> weights{Polynomial::constant(1)};
  for (const auto& a : params) {
    size_t sz = weights.size();
    for (size_t i = 0; i < sz; ++i) weights.push_back(-(a * weights[i]));
  }
  Polynomial out;
  for (size_t i = 0; i < x.size(); ++i) out += weights[i] * x[i] * x[i];
  return out;
}

namespace {

CdMultiplication build_multiplication(int fold, const std::vector<Polynomial>& params,
                                      const std::vector<std::string>& param_vars,
                                      const std::vector<std::string>& ambient) {
  const int dim = 1 << fold;
  CdMultiplication out;
  out.fold = fold;
  out.x_vars = numbered("x", dim);
  out.y_vars = numbered("y", dim);
  out.param_vars = param_vars;

  std::vector<std::string> vars = ambient;
  std::vector<Polynomial> x, y;
  for (const auto& n : out.x_vars) x.push_back(Polynomial::variable(n, vars));
  for (const auto& n : out.y_vars) y.push_back(Polynomial::variable(n, vars));

  out.map.components = cd_multiply(fold, params, x, y);
  out.map.source_vars = out.x_vars;
  out.map.source_vars.insert(out.map.source_vars.end(), out.y_vars.begin(),
                             out.y_vars.end());

  out.certificate = cd_norm(params, out.map.components) -
                    cd_norm(params, x) * cd_norm(params, y);
  if (!out.certificate.is_zero())
    throw std::logic_error("composition norm identity failed; doubling formula is wrong");
  return out;
}

}  // namespace

CdMultiplication cayley_dickson_multiply(int fold) {
  check_fold(fold, 3, "cayley_dickson_multiply");
  const int dim = 1 << fold;
  std::vector<std::string> param_vars = numbered("a", fold);
  std::vector<std::string> ambient = numbered("x", dim);
  for (const auto& s : numbered("y", dim)) ambient.push_back(s);
  for (const auto& s : param_vars) ambient.push_back(s);
  std::vector<Polynomial> params;
  for (const auto& n : param_vars) params.push_back(Polynomial::variable(n, ambient));
  return build_multiplication(fold, params, param_vars, ambient);
}

CdMultiplication cayley_dickson_multiply(int fold, const std::vector<Rational>& params) {
  check_fold(fold, 3, "cayley_dickson_multiply");
  if (static_cast<int>(params.size()) != fold)
    throw std::invalid_argument("expected one parameter per fold");
  for (const auto& a : params)
    if (a == 0) throw ZeroParameter();
  const int dim = 1 << fold;
  std::vector<std::string> ambient = numbered("x", dim);
  for (const auto& s : numbered("y", dim)) ambient.push_back(s);
  std::vector<Polynomial> ps;
  for (const auto& a : params)
    ps.push_back(Polynomial::constant(a).with_variables(ambient));
  return build_multiplication(fold, ps, {}, ambient);
}

HopfMap hopf_map(int fold) {
  check_fold(fold, 3, "hopf_map");
  const int dim = 1 << fold;
  std::vector<std::string> vars = numbered("x", dim);
  for (const auto& s : numbered("y", dim)) vars.push_back(s);

  std::vector<Polynomial> params(fold, Polynomial::constant(-1).with_variables(vars));
  std::vector<Polynomial> x, y;
  for (int i = 1; i <= dim; ++i) x.push_back(Polynomial::variable("x" + std::to_string(i), vars));
  for (int i = 1; i <= dim; ++i) y.push_back(Polynomial::variable("y" + std::to_string(i), vars));

  Polynomial nx = cd_norm(params, x), ny = cd_norm(params, y);
  std::vector<Polynomial> prod = cd_multiply(fold, params, x, cd_conjugate(y));
  for (auto& c : prod) c = c * Rational(2);

  HopfMap out;
  out.fold = fold;
  out.map.components.push_back(nx - ny);
  for (const auto& c : prod) out.map.components.push_back(c);
  out.map.source_vars = vars;

  Polynomial sum = nx + ny;
  out.certificate = (nx - ny) * (nx - ny) + cd_norm(params, prod) - sum * sum;
  if (!out.certificate.is_zero())
    throw std::logic_error("Hopf sphere identity failed");
  return out;
}

// ---------------------------------------------------------------------------
// neighbor analysis

namespace {

// Normalizes an anisotropic form to <1, u_1, ..., u_{m-1}> modulo squares:
// returns the square classes u_i and the similarity factor (first diagonal
// entry). Works over Q.
std::pair<Rational, std::vector<SquareClass>> normalized_diagonal(const QuadraticForm& q) {
  std::vector<Rational> diag = diagonalize(q).diagonal;
  Rational c = diag[0];
  std::vector<SquareClass> units;
  SquareClass c_class = square_class_reduce(c);
  for (size_t i = 1; i < diag.size(); ++i)
    units.push_back(square_class_mul(c_class, square_class_reduce(diag[i])));
  return {c, units};
}

// Searches explicit parameters (a,b,c) with r ≅ <<a,b,c>> for a dim-8 form
// r that represents 1 and lies in I^3. The candidate pool is generated from
// single entries and pairwise products of the normalized diagonal.
std::optional<std::vector<Rational>> find_3fold_params(const QuadraticForm& r) {
  auto [c0, units] = normalized_diagonal(r);
  std::vector<SquareClass> pool;
  auto push = [&pool](const SquareClass& s) {
    if (std::find(pool.begin(), pool.end(), s) == pool.end()) pool.push_back(s);
  };
  for (const auto& u : units) push(SquareClass{-u.rep});
  for (size_t i = 0; i < units.size(); ++i)
    for (size_t j = i + 1; j < units.size(); ++j)
      push(SquareClass{-square_class_mul(units[i], units[j]).rep});
  std::sort(pool.begin(), pool.end(), [](const SquareClass& a, const SquareClass& b) {
    Int aa = abs(a.rep), ab = abs(b.rep);
    if (aa != ab) return aa < ab;
    return a.rep > b.rep;
  });

  FormInvariants target = invariants(r);
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i; j < pool.size(); ++j)
      for (size_t k = j; k < pool.size(); ++k) {
        std::vector<Rational> params{Rational(pool[i].rep), Rational(pool[j].rep),
                                     Rational(pool[k].rep)};
        QuadraticForm candidate =
            QuadraticForm::diagonal(r.field(), pfister_diagonal(params));
        if (equivalent_invariants(invariants(candidate), target)) return params;
      }
  return std::nullopt;
}

void certify(const QuadraticForm& q, const NeighborReport& rep) {
  // alpha ⊥ scalar*alpha', scaled by the similarity factor, must equal q
  std::vector<Rational> diag = pfister_diagonal(rep.alpha_params);
  for (const auto& e : rep.alpha_prime) diag.push_back(*rep.scalar * e);
  QuadraticForm model = scale(*rep.similarity, QuadraticForm::diagonal(q.field(), diag));
  if (!is_equivalent(q, model))
    throw std::logic_error("neighbor certificate failed re-verification");
}

}  // namespace

NeighborReport neighbor_analysis(const QuadraticForm& q) {
  FormInvariants inv = invariants(q);
  if (is_isotropic(inv)) throw IsotropicInput();
  const int m = inv.dimension;
  NeighborReport rep;

  if (inv.field.is_R()) {
    if (m < 2) {
      rep.trace.push_back("dimension 1: neighbor notion degenerate, undetermined");
      return rep;
    }
    int n = 0;
    while ((1 << n) < m) ++n;  // 2^{n-1} < m <= 2^n
    auto [pos, neg] = *inv.signature;
    Rational sim = pos > 0 ? 1 : -1;  // definite: q ~ sim * (sum of m squares)
    rep.is_neighbor = Tri::Yes;
    rep.is_special = Tri::Yes;
    rep.fold = n;
    rep.alpha_params.assign(n - 1, Rational(-1));
    rep.alpha_prime.assign(m - (1 << (n - 1)), Rational(1));
    rep.scalar = Rational(1);
    rep.similarity = sim;
    rep.trace.push_back("definite over R: special neighbor of the all-(-1) Pfister form, fold " +
                        std::to_string(n));
    // re-verify over R: sum of 2^{n-1} squares ⊥ remaining squares
    certify(q, rep);
    return rep;
  }

  if (!inv.field.is_Q()) {
    rep.trace.push_back("neighbor analysis implemented over Q and R only");
    return rep;
  }

  if (m == 2) {
    auto [c0, units] = normalized_diagonal(q);
    rep.is_neighbor = Tri::Yes;
    rep.is_special = Tri::Yes;
    rep.fold = 1;
    rep.alpha_params = {};            // 0-fold Pfister <1>
    rep.alpha_prime = {Rational(1)};  // <1> itself
    rep.scalar = Rational(units[0].rep);
    rep.similarity = c0;
    rep.trace.push_back("dimension 2: always similar to the 1-fold Pfister form <1," +
                        units[0].rep.str() + ">");
    certify(q, rep);
    return rep;
  }

  if (m == 3) {
    // <1> ⊥ det(q)*q is a 2-fold Pfister form (discriminant forcing)
    Rational det(inv.det.rep);
    QuadraticForm g = direct_sum(QuadraticForm::diagonal(q.field(), {Rational(1)}),
                                 scale(det, q));
    auto [c0, units] = normalized_diagonal(g);  // c0 = 1
    // g = <1,u,v,uv>; pure part <u,v,uv> scaled by u is <1,uv> ⊥ v<1>
    SquareClass u = units[0], v = units[1];
    rep.is_neighbor = Tri::Yes;
    rep.is_special = Tri::Yes;
    rep.fold = 2;
    rep.alpha_params = {Rational(-square_class_mul(u, v).rep)};
    rep.alpha_prime = {Rational(1)};
    rep.scalar = Rational(v.rep);
    rep.similarity = Rational(square_class_mul(square_class_reduce(det), u).rep);
    rep.trace.push_back("dimension 3: similar to the pure subform of a 2-fold Pfister form");
    certify(q, rep);
    return rep;
  }

  if (m == 4) {
    if (!inv.disc.trivial()) {
      rep.trace.push_back(
          "dimension 4 with nonsquare discriminant: not similar to a 2-fold Pfister form; "
          "neighbor status undetermined");
      return rep;
    }
    auto [c0, units] = normalized_diagonal(q);  // <1,u,v,w>, w = uv mod squares
    rep.is_neighbor = Tri::Yes;
    rep.is_special = Tri::Yes;
    rep.fold = 2;
    rep.alpha_params = {Rational(-units[0].rep)};
    rep.alpha_prime = {Rational(1), Rational(units[0].rep)};
    rep.scalar = Rational(units[1].rep);
    rep.similarity = c0;
    rep.trace.push_back("dimension 4 with square discriminant: similar to a 2-fold Pfister form");
    certify(q, rep);
    return rep;
  }

  if (m == 7) {
    Rational det(inv.det.rep);
    QuadraticForm g = direct_sum(QuadraticForm::diagonal(q.field(), {Rational(1)}),
                                 scale(det, q));
    FormInvariants ginv = invariants(g);
    if (!clifford_trivial(ginv)) {
      rep.trace.push_back(
          "dimension 7: det-forced Pfister companion has nontrivial Clifford invariant; "
          "undetermined");
      return rep;
    }
    auto params = find_3fold_params(g);
    if (!params) {
      rep.trace.push_back(
          "dimension 7: companion lies in I^3 but explicit Pfister parameters were not "
          "found within the search pool; undetermined");
      return rep;
    }
    // g = <<a,b,c>> = alpha ⊥ (-c) alpha with alpha = <<a,b>>;
    // pure part p' = alpha' ⊥ (-c) alpha  ~  (-c)(alpha ⊥ (-c) alpha'),
    // and q ≅ det * p'.
    std::vector<Rational> alpha_params{(*params)[0], (*params)[1]};
    std::vector<Rational> alpha_diag = pfister_diagonal(alpha_params);
    rep.is_neighbor = Tri::Yes;
    rep.is_special = Tri::Yes;
    rep.fold = 3;
    rep.alpha_params = alpha_params;
    rep.alpha_prime = std::vector<Rational>(alpha_diag.begin() + 1, alpha_diag.end());
    rep.scalar = -(*params)[2];
    rep.similarity = det * -(*params)[2];
    rep.trace.push_back("dimension 7: similar to the pure subform of the 3-fold Pfister form <<" +
                        to_string((*params)[0]) + "," + to_string((*params)[1]) + "," +
                        to_string((*params)[2]) + ">>");
    certify(q, rep);
    return rep;
  }

  if (m == 8) {
    if (!inv.disc.trivial() || !clifford_trivial(inv)) {
      rep.trace.push_back(
          "dimension 8: discriminant or Clifford invariant nontrivial; the 3-fold Pfister "
          "similarity test fails; undetermined");
      return rep;
    }
    auto [c0, units] = normalized_diagonal(q);
    QuadraticForm r = scale(c0, q);
    auto params = find_3fold_params(r);
    if (!params) {
      rep.trace.push_back(
          "dimension 8: form lies in I^3 but explicit Pfister parameters were not found "
          "within the search pool; undetermined");
      return rep;
    }
    std::vector<Rational> alpha_params{(*params)[0], (*params)[1]};
    rep.is_neighbor = Tri::Yes;
    rep.is_special = Tri::Yes;
    rep.fold = 3;
    rep.alpha_params = alpha_params;
    rep.alpha_prime = pfister_diagonal(alpha_params);
    rep.scalar = -(*params)[2];
    rep.similarity = c0;
    rep.trace.push_back("dimension 8: similar to the 3-fold Pfister form <<" +
                        to_string((*params)[0]) + "," + to_string((*params)[1]) + "," +
                        to_string((*params)[2]) + ">>");
    certify(q, rep);
    return rep;
  }

  rep.trace.push_back("dimension " + std::to_string(m) +
                      ": no neighbor rule implemented; undetermined");
  return rep;
}

}  // namespace qf
