#include "qforms/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qf {

namespace {

int degree_of(const Polynomial::Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

}  // namespace

bool Polynomial::GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  int da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  return a < b;
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_[{}] = c;
  return p;
}

Polynomial Polynomial::variable(const std::string& name,
                                const std::vector<std::string>& vars) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw UnknownVariable(name);
  Polynomial p(vars);
  Exponents e(vars.size(), 0);
  e[static_cast<size_t>(it - vars.begin())] = 1;
  p.terms_[e] = 1;
  return p;
}

void Polynomial::insert_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::with_variables(const std::vector<std::string>& vars) const {
  // a variable may be dropped only if it is unused (all exponents zero)
  std::vector<int> index(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) {
      if (degree_in(vars_[i]) > 0)
        throw std::invalid_argument("variable list does not cover '" + vars_[i] + "'");
      index[i] = -1;
    } else {
      index[i] = static_cast<int>(it - vars.begin());
    }
  }
  Polynomial out(vars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i)
      if (index[i] >= 0) ne[index[i]] = e[i];
    out.terms_[std::move(ne)] = c;
  }
  return out;
}

std::pair<Polynomial, Polynomial> Polynomial::aligned(const Polynomial& a,
                                                      const Polynomial& b) {
  if (a.vars_ == b.vars_) return {a, b};
  std::vector<std::string> merged = a.vars_;
  for (const auto& v : b.vars_)
    if (std::find(merged.begin(), merged.end(), v) == merged.end())
      merged.push_back(v);
  return {a.with_variables(merged), b.with_variables(merged)};
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return degree_of(terms_.rbegin()->first);
}

int Polynomial::degree_in(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return 0;
  size_t idx = static_cast<size_t>(it - vars_.begin());
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  Exponents key = e;
  key.resize(vars_.size(), 0);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const {
  return coefficient(Exponents(vars_.size(), 0));
}

void Polynomial::set_coefficient(const Exponents& e, const Rational& c) {
  Exponents key = e;
  key.resize(vars_.size(), 0);
  if (c == 0)
    terms_.erase(key);
  else
    terms_[key] = c;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  auto [a, b] = aligned(*this, o);
  Polynomial out(a.vars_);
  out.terms_ = a.terms_;
  for (const auto& [e, c] : b.terms_) out.insert_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  auto [a, b] = aligned(*this, o);
  Polynomial out(a.vars_);
  Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.insert_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out(vars_);
  if (c == 0) return out;
  for (const auto& [e, k] : terms_) out.terms_[e] = k * c;
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  Polynomial out = constant(1);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (vars_ == o.vars_) return terms_ == o.terms_;
  auto [a, b] = aligned(*this, o);
  return a.terms_ == b.terms_;
}

bool Polynomial::is_zero_mod(const Int& p) const {
  for (const auto& [e, c] : terms_) {
    if (denominator(c) % p == 0)
      throw std::domain_error("denominator not prime to p");
    if (numerator(c) % p != 0) return false;
  }
  return true;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& assignment) const {
  // union of all value rings, in deterministic first-appearance order
  std::vector<std::string> tvars;
  auto absorb = [&tvars](const std::vector<std::string>& vs) {
    for (const auto& v : vs)
      if (std::find(tvars.begin(), tvars.end(), v) == tvars.end())
        tvars.push_back(v);
  };
  std::vector<const Polynomial*> values(vars_.size(), nullptr);
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = assignment.find(vars_[i]);
    if (it != assignment.end()) {
      values[i] = &it->second;
      absorb(it->second.variables());
    }
  }
  // power cache per variable
  std::vector<std::vector<Polynomial>> powers(vars_.size());
  auto power_of = [&](size_t i, int e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(1).with_variables(tvars));
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(cache.back() * values[i]->with_variables(tvars));
    return cache[e];
  };
  Polynomial out(tvars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(c).with_variables(tvars);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!values[i]) throw MissingAssignment(vars_[i]);
      term = term * power_of(i, e[i]);
    }
    out += term;
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
  Rational out = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw MissingAssignment(vars_[i]);
      for (int k = 0; k < e[i]; ++k) term *= it->second;
    }
    out += term;
  }
  return out;
}

std::pair<Polynomial, Polynomial> Polynomial::divide_by(const Polynomial& f) const {
  if (f.is_zero()) throw std::invalid_argument("division by zero polynomial");
  auto [h0, g] = aligned(*this, f);
  const auto& lead = g.terms_.rbegin()->first;
  const Rational& lead_c = g.terms_.rbegin()->second;
  Polynomial h = h0;
  Polynomial quotient(h.vars_), remainder(h.vars_);
  while (!h.terms_.empty()) {
    auto it = std::prev(h.terms_.end());
    const Exponents& e = it->first;
    bool divisible = true;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] < lead[i]) {
        divisible = false;
        break;
      }
    if (!divisible) {
      remainder.insert_term(e, it->second);
      h.terms_.erase(it);
      continue;
    }
    Exponents qe(e.size());
    for (size_t i = 0; i < e.size(); ++i) qe[i] = e[i] - lead[i];
    Rational qc = it->second / lead_c;
    Polynomial step(h.vars_);
    step.terms_[qe] = qc;
    quotient.insert_term(qe, qc);
    h = h - step * g;
  }
  return {quotient, remainder};
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
      first = false;
    } else {
      if (a < 0) {
        out << " - ";
        a = -a;
      } else {
        out << " + ";
      }
    }
    std::vector<std::string> parts;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      parts.push_back(e[i] == 1 ? vars_[i] : vars_[i] + "^" + std::to_string(e[i]));
    }
    if (parts.empty()) {
      out << to_string(a);
    } else {
      bool wrote = false;
      if (a != 1) {
        out << to_string(a);
        wrote = true;
      }
      for (const auto& part : parts) {
        if (wrote) out << "*";
        out << part;
        wrote = true;
      }
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
  Kind kind;
  size_t pos;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    size_t start = i_;
    if (i_ >= text_.size()) {
      tok_ = {Token::End, start, ""};
      return;
    }
    char c = text_[i_];
    auto single = [&](Token::Kind k) {
      ++i_;
      tok_ = {k, start, std::string(1, c)};
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      tok_ = {Token::Number, start, text_.substr(i_, j - i_)};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      tok_ = {Token::Ident, start, text_.substr(i_, j - i_)};
      i_ = j;
      return;
    }
    switch (c) {
      case '+': single(Token::Plus); return;
      case '-': single(Token::Minus); return;
      case '*': single(Token::Star); return;
      case '^': single(Token::Caret); return;
      case '/': single(Token::Slash); return;
      case '(': single(Token::LParen); return;
      case ')': single(Token::RParen); return;
      default: throw SyntaxError("unexpected character '" + std::string(1, c) + "'", start);
    }
  }

  const std::string& text_;
  size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars)
      : lex_(text), vars_(vars) {}

  Polynomial run() {
    Polynomial p = expr();
    if (lex_.peek().kind != Token::End)
      throw SyntaxError("unexpected trailing input", lex_.peek().pos);
    return p;
  }

 private:
  Polynomial expr() {
    bool negate = false;
    if (lex_.peek().kind == Token::Plus) {
      lex_.next();
    } else if (lex_.peek().kind == Token::Minus) {
      lex_.next();
      negate = true;
    }
    Polynomial p = term();
    if (negate) p = -p;
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      Token op = lex_.next();
      Polynomial rhs = term();
      p = op.kind == Token::Plus ? p + rhs : p - rhs;
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.next();
      p = p * factor();
    }
    return p;
  }

  Polynomial factor() {
    Polynomial p = base();
    if (lex_.peek().kind == Token::Caret) {
      lex_.next();
      Token e = lex_.next();
      if (e.kind != Token::Number) throw SyntaxError("exponent must be an unsigned integer", e.pos);
      p = p.pow(std::stoi(e.text));
    }
    return p;
  }

  Polynomial base() {
    Token t = lex_.peek();
    if (t.kind == Token::LParen) {
      lex_.next();
      Polynomial p = expr();
      Token close = lex_.next();
      if (close.kind != Token::RParen) throw SyntaxError("expected ')'", close.pos);
      return p;
    }
    if (t.kind == Token::Ident) {
      lex_.next();
      if (std::find(vars_.begin(), vars_.end(), t.text) == vars_.end())
        throw UnknownVariable(t.text);
      return Polynomial::variable(t.text, vars_);
    }
    if (t.kind == Token::Minus || t.kind == Token::Number) {
      return rational_literal();
    }
    throw SyntaxError("expected variable, number or '('", t.pos);
  }

  Polynomial rational_literal() {
    bool neg = false;
    if (lex_.peek().kind == Token::Minus) {
      lex_.next();
      neg = true;
    }
    Token num = lex_.next();
    if (num.kind != Token::Number) throw SyntaxError("expected number", num.pos);
    Int n(num.text);
    if (neg) n = -n;
    if (lex_.peek().kind == Token::Slash) {
      lex_.next();
      Token den = lex_.next();
      if (den.kind != Token::Number)
        throw SyntaxError("denominator must be an unsigned integer", den.pos);
      Int d(den.text);
      if (d == 0) throw SyntaxError("zero denominator", den.pos);
      return Polynomial::constant(Rational(n, d)).with_variables(vars_);
    }
    return Polynomial::constant(Rational(n)).with_variables(vars_);
  }

  Lexer lex_;
  const std::vector<std::string>& vars_;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, const std::vector<std::string>& vars) {
  return Parser(text, vars).run();
}

bool PolyMap::operator==(const PolyMap& o) const {
  if (components.size() != o.components.size()) return false;
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i] != o.components[i]) return false;
  bool d1 = denominator.has_value(), d2 = o.denominator.has_value();
  if (d1 != d2) return false;
  return !d1 || *denominator == *o.denominator;
}

Polynomial compose(const Polynomial& p, const std::vector<std::string>& target_vars,
                   const PolyMap& m) {
  if (target_vars.size() != m.components.size())
    throw std::invalid_argument("component count does not match target variables");
  std::map<std::string, Polynomial> assignment;
  for (size_t i = 0; i < target_vars.size(); ++i)
    assignment.emplace(target_vars[i], m.components[i]);
  return p.substitute(assignment);
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  PolyMap out;
  out.source_vars = g.source_vars;
  out.components.reserve(f.components.size());
  for (const auto& c : f.components)
    out.components.push_back(compose(c, f.source_vars, g));
  return out;
}

}  // namespace qf
