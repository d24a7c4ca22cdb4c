#include "motfib/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "motfib/errors.hpp"

namespace motfib {

bool GradedLex::operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
  unsigned long da = 0, db = 0;
  for (unsigned e : a) da += e;
  for (unsigned e : b) db += e;
  if (da != db) return da < db;
  return a < b;
}

Polynomial::Polynomial(std::vector<std::string> vars, const Rat& constant)
    : vars_(std::move(vars)) {
  if (constant != 0) terms_[std::vector<unsigned>(vars_.size(), 0)] = constant;
}

Polynomial Polynomial::variable(const std::vector<std::string>& vars, size_t index) {
  Polynomial p(vars);
  std::vector<unsigned> e(vars.size(), 0);
  e[index] = 1;
  p.terms_[e] = Rat(1);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (unsigned e : terms_.begin()->first)
    if (e != 0) return false;
  return true;
}

Rat Polynomial::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) fail(ErrKind::InternalError, "Polynomial::constant_value", "not constant");
  return terms_.begin()->second;
}

void Polynomial::add_term(const std::vector<unsigned>& exp, const Rat& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_[exp] = coeff;
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat Polynomial::coeff(const std::vector<unsigned>& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rat(0) : it->second;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<unsigned> e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::operator*(const Rat& s) const {
  Polynomial r(vars_);
  if (s == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const { return terms_ == o.terms_; }

Polynomial Polynomial::pow(unsigned long e) const {
  Polynomial result(vars_, Rat(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Polynomial Polynomial::derivative(size_t var) const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<unsigned> e2(e);
    e2[var] -= 1;
    r.add_term(e2, c * static_cast<long>(e[var]));
  }
  return r;
}

Rat Polynomial::eval(const std::vector<Rat>& point) const {
  Rat total(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t *= rat_pow(point[i], e[i]);
    total += t;
  }
  return total;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& images) const {
  if (images.size() != vars_.size())
    fail(ErrKind::InternalError, "Polynomial::compose", "image count mismatch");
  std::vector<std::string> tvars = images.empty() ? vars_ : images[0].vars();
  Polynomial r(tvars);
  // Cache powers of each image.
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (size_t i = 0; i < images.size(); ++i) powers[i].push_back(Polynomial(tvars, Rat(1)));
  for (const auto& [e, c] : terms_) {
    Polynomial t(tvars, c);
    for (size_t i = 0; i < e.size(); ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
      if (e[i] > 0) t = t * powers[i][e[i]];
    }
    r = r + t;
  }
  return r;
}

long Polynomial::total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long t = 0;
    for (unsigned x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

std::optional<long> Polynomial::order_at_origin() const {
  if (terms_.empty()) return std::nullopt;
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long t = 0;
    for (unsigned x : e) t += x;
    if (d < 0 || t < d) d = t;
  }
  return d;
}

long Polynomial::degree_in(size_t var) const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[var]));
  return d;
}

long Polynomial::order_in(size_t var) const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long t = e[var];
    if (d < 0 || t < d) d = t;
  }
  return d;
}

std::vector<Polynomial> Polynomial::nested(size_t main_var) const {
  long d = degree_in(main_var);
  std::vector<Polynomial> out(static_cast<size_t>(d < 0 ? 0 : d + 1), Polynomial(vars_));
  for (const auto& [e, c] : terms_) {
    std::vector<unsigned> e2(e);
    unsigned i = e2[main_var];
    e2[main_var] = 0;
    out[i].add_term(e2, c);
  }
  return out;
}

Polynomial Polynomial::from_nested(const std::vector<Polynomial>& coeffs, size_t main_var) {
  if (coeffs.empty()) return Polynomial();
  Polynomial r(coeffs[0].vars());
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (const auto& [e, c] : coeffs[i].terms()) {
      std::vector<unsigned> e2(e);
      e2[main_var] += static_cast<unsigned>(i);
      r.add_term(e2, c);
    }
  return r;
}

bool Polynomial::uses_only(size_t var) const {
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) return false;
  return true;
}

UPoly Polynomial::to_upoly(size_t var) const {
  if (!uses_only(var)) fail(ErrKind::InternalError, "Polynomial::to_upoly", "not univariate");
  long d = degree_in(var);
  std::vector<Rat> c(static_cast<size_t>(d < 0 ? 0 : d + 1), Rat(0));
  for (const auto& [e, co] : terms_) c[e[var]] = co;
  return UPoly(std::move(c));
}

Polynomial Polynomial::from_upoly(const UPoly& p, const std::vector<std::string>& vars,
                                  size_t var) {
  Polynomial r(vars);
  for (long i = 0; i <= p.deg(); ++i) {
    if (p.coeff(i) == 0) continue;
    std::vector<unsigned> e(vars.size(), 0);
    e[var] = static_cast<unsigned>(i);
    r.add_term(e, p.coeff(i));
  }
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Iterate highest order first for a conventional reading.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rat a = it->second;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    bool any_var = false;
    for (unsigned e : it->first) any_var = any_var || e > 0;
    bool unit = (a == 1 && any_var);
    if (!unit) os << rat_str(a);
    bool need_star = !unit;
    for (size_t i = 0; i < it->first.size(); ++i) {
      unsigned e = it->first[i];
      if (e == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

// ---- parser ----

namespace {

struct Token {
  enum Kind { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    size_t start = i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::End, "", start};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {Token::Int, s_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_ = {Token::Ident, s_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {Token::Plus, "+", start}; return;
      case '-': tok_ = {Token::Minus, "-", start}; return;
      case '*': tok_ = {Token::Star, "*", start}; return;
      case '^': tok_ = {Token::Caret, "^", start}; return;
      case '/': tok_ = {Token::Slash, "/", start}; return;
      case '(': tok_ = {Token::LParen, "(", start}; return;
      case ')': tok_ = {Token::RParen, ")", start}; return;
      default:
        fail(ErrKind::SyntaxError, "input:" + std::to_string(start + 1),
             std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars)
      : lex_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    if (lex_.peek().kind != Token::End)
      fail(ErrKind::SyntaxError, at(lex_.peek()), "trailing input");
    return p;
  }

 private:
  static std::string at(const Token& t) { return "input:" + std::to_string(t.pos + 1); }

  Polynomial expr() {
    Polynomial p = term();
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      Token op = lex_.take();
      Polynomial q = term();
      p = (op.kind == Token::Plus) ? p + q : p - q;
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.take();
      p = p * factor();
    }
    return p;
  }

  Polynomial factor() {
    int sign = 1;
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      if (lex_.take().kind == Token::Minus) sign = -sign;
    }
    Polynomial p = atom();
    if (lex_.peek().kind == Token::Caret) {
      Token caret = lex_.take();
      if (lex_.peek().kind != Token::Int)
        fail(ErrKind::SyntaxError, at(caret), "exponent must be a nonnegative integer literal");
      Token e = lex_.take();
      unsigned long ev = 0;
      try {
        ev = std::stoul(e.text);
      } catch (...) {
        fail(ErrKind::SyntaxError, at(e), "exponent out of range");
      }
      p = p.pow(ev);
    }
    return sign == 1 ? p : -p;
  }

  Polynomial atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Int: {
        Rat v(t.text);
        v.canonicalize();
        if (lex_.peek().kind == Token::Slash) {
          lex_.take();
          if (lex_.peek().kind != Token::Int)
            fail(ErrKind::SyntaxError, at(lex_.peek()), "expected integer denominator");
          Token d = lex_.take();
          Rat den(d.text);
          den.canonicalize();
          if (den == 0) fail(ErrKind::SyntaxError, at(d), "zero denominator");
          v /= den;
        }
        return Polynomial(vars_, v);
      }
      case Token::Ident: {
        for (size_t i = 0; i < vars_.size(); ++i)
          if (vars_[i] == t.text) return Polynomial::variable(vars_, i);
        fail(ErrKind::UnknownVariable, at(t), "variable '" + t.text + "' not allowed here");
      }
      case Token::LParen: {
        Polynomial p = expr();
        if (lex_.peek().kind != Token::RParen)
          fail(ErrKind::SyntaxError, at(lex_.peek()), "expected ')'");
        lex_.take();
        return p;
      }
      case Token::End:
        fail(ErrKind::SyntaxError, at(t), "unexpected end of input");
      default:
        fail(ErrKind::SyntaxError, at(t), "unexpected token '" + t.text + "'");
    }
  }

  Lexer lex_;
  const std::vector<std::string>& vars_;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

// ---- bivariate helpers ----

namespace {

// View a two-variable polynomial as a dense vector of UPoly coefficients in
// the second variable: f = sum coeffs[i] * v1^i, coeffs[i] in Q[v0].
std::vector<UPoly> nested_upoly(const Polynomial& f) {
  std::vector<UPoly> out;
  long d = f.degree_in(1);
  if (d < 0) return out;
  std::vector<std::vector<Rat>> acc(static_cast<size_t>(d + 1));
  for (const auto& [e, c] : f.terms()) {
    auto& row = acc[e[1]];
    if (row.size() <= e[0]) row.resize(e[0] + 1, Rat(0));
    row[e[0]] = c;
  }
  out.reserve(acc.size());
  for (auto& row : acc) out.emplace_back(std::move(row));
  return out;
}

Polynomial from_nested_upoly(const std::vector<UPoly>& coeffs, const Polynomial& like) {
  Polynomial r(like.vars());
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (long j = 0; j <= coeffs[i].deg(); ++j) {
      if (coeffs[i].coeff(j) == 0) continue;
      std::vector<unsigned> e(like.vars().size(), 0);
      e[0] = static_cast<unsigned>(j);
      e[1] = static_cast<unsigned>(i);
      r.add_term(e, coeffs[i].coeff(j));
    }
  return r;
}

long nv_deg(const std::vector<UPoly>& f) {
  for (size_t i = f.size(); i-- > 0;)
    if (!f[i].is_zero()) return static_cast<long>(i);
  return -1;
}

void nv_trim(std::vector<UPoly>& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

UPoly nv_content(const std::vector<UPoly>& f) {
  UPoly g;
  for (const auto& c : f) g = UPoly::gcd(g, c);
  return g;
}

std::vector<UPoly> nv_scale_div(const std::vector<UPoly>& f, const UPoly& d) {
  std::vector<UPoly> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(c.is_zero() ? c : c.divexact(d));
  return out;
}

std::vector<UPoly> nv_primitive(const std::vector<UPoly>& f) {
  UPoly c = nv_content(f);
  if (c.is_zero() || c.deg() == 0) return f;
  return nv_scale_div(f, c);
}

// Pseudo-remainder of a by b in (Q[v0])[v1].
std::vector<UPoly> nv_prem(std::vector<UPoly> a, const std::vector<UPoly>& b) {
  long db = nv_deg(b);
  if (db < 0) fail(ErrKind::InternalError, "nv_prem", "zero divisor");
  const UPoly& lb = b[db];
  long da = nv_deg(a);
  while (da >= db) {
    UPoly la = a[da];
    // a = a * lb - la * v1^(da-db) * b
    for (auto& c : a) c = c * lb;
    for (long i = 0; i <= db; ++i) a[da - db + i] = a[da - db + i] - la * b[i];
    nv_trim(a);
    long nda = nv_deg(a);
    if (nda == da) fail(ErrKind::InternalError, "nv_prem", "no degree drop");
    da = nda;
  }
  return a;
}

}  // namespace

Polynomial bivariate_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  std::vector<UPoly> a = nested_upoly(f), b = nested_upoly(g);
  UPoly ca = nv_content(a), cb = nv_content(b);
  a = nv_primitive(a);
  b = nv_primitive(b);
  if (nv_deg(a) < nv_deg(b)) std::swap(a, b);
  while (nv_deg(b) > 0) {
    std::vector<UPoly> r = nv_prem(a, b);
    if (r.empty()) {
      // b divides a (up to content): the gcd is b.
      a = b;
      b.clear();
      break;
    }
    a = std::move(b);
    b = nv_primitive(r);
  }
  std::vector<UPoly> core;
  if (!b.empty() && nv_deg(b) == 0) {
    core = {UPoly(Rat(1))};  // coprime in v1
  } else {
    core = nv_primitive(a);
  }
  UPoly cont = UPoly::gcd(ca, cb);
  for (auto& c : core) c = c * cont;
  Polynomial out = from_nested_upoly(core, f.vars().empty() ? g : f);
  return out;
}

Polynomial bivariate_divexact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) fail(ErrKind::InternalError, "bivariate_divexact", "division by zero");
  if (f.is_zero()) return f;
  std::vector<UPoly> a = nested_upoly(f);
  std::vector<UPoly> b = nested_upoly(g);
  long db = nv_deg(b);
  std::vector<UPoly> q(a.size(), UPoly());
  long da = nv_deg(a);
  while (da >= db && da >= 0) {
    UPoly qc = a[da].divexact(b[db]);
    q[da - db] = qc;
    for (long i = 0; i <= db; ++i) a[da - db + i] = a[da - db + i] - qc * b[i];
    nv_trim(a);
    long nda = nv_deg(a);
    if (nda >= da) fail(ErrKind::InternalError, "bivariate_divexact", "no degree drop");
    da = nda;
  }
  if (!a.empty()) fail(ErrKind::InternalError, "bivariate_divexact", "inexact division");
  return from_nested_upoly(q, f);
}

Polynomial bivariate_squarefree_part(const Polynomial& f) {
  if (f.is_zero()) return f;
  Polynomial d0 = f.derivative(0), d1 = f.derivative(1);
  Polynomial g = bivariate_gcd(bivariate_gcd(f, d0), d1);
  if (g.is_constant()) return f;
  return bivariate_divexact(f, g);
}

}  // namespace motfib
