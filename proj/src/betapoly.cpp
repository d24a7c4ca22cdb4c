#include "motfib/betapoly.hpp"

#include <cctype>
#include <sstream>

#include "motfib/errors.hpp"

namespace motfib {

BetaPoly::BetaPoly(const Rat& constant) {
  if (constant != 0) c_[0] = constant;
}

BetaPoly BetaPoly::u_power(int k, const Rat& coeff) {
  BetaPoly p;
  if (coeff != 0) p.c_[k] = coeff;
  return p;
}

Rat BetaPoly::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Rat(0) : it->second;
}

void BetaPoly::set(int k, const Rat& v) {
  if (v == 0)
    c_.erase(k);
  else
    c_[k] = v;
}

void BetaPoly::add(int k, const Rat& v) {
  if (v == 0) return;
  auto it = c_.find(k);
  if (it == c_.end()) {
    c_[k] = v;
  } else {
    it->second += v;
    if (it->second == 0) c_.erase(it);
  }
}

BetaPoly BetaPoly::operator-() const {
  BetaPoly r;
  for (const auto& [k, v] : c_) r.c_[k] = -v;
  return r;
}

BetaPoly BetaPoly::operator+(const BetaPoly& o) const {
  BetaPoly r = *this;
  for (const auto& [k, v] : o.c_) r.add(k, v);
  return r;
}

BetaPoly BetaPoly::operator-(const BetaPoly& o) const { return *this + (-o); }

BetaPoly BetaPoly::operator*(const BetaPoly& o) const {
  BetaPoly r;
  for (const auto& [ka, va] : c_)
    for (const auto& [kb, vb] : o.c_) r.add(ka + kb, va * vb);
  return r;
}

BetaPoly BetaPoly::operator*(const Rat& s) const {
  BetaPoly r;
  if (s == 0) return r;
  for (const auto& [k, v] : c_) r.c_[k] = v * s;
  return r;
}

BetaPoly& BetaPoly::operator+=(const BetaPoly& o) {
  for (const auto& [k, v] : o.c_) add(k, v);
  return *this;
}

BetaPoly BetaPoly::shifted_u(int k) const {
  BetaPoly r;
  for (const auto& [i, v] : c_) r.c_[i + k] = v;
  return r;
}

BetaPoly BetaPoly::pow(unsigned long e) const {
  BetaPoly result(Rat(1));
  BetaPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Rat BetaPoly::eval(const Rat& x) const {
  Rat total(0);
  for (const auto& [k, v] : c_) {
    if (k >= 0) {
      total += v * rat_pow(x, static_cast<unsigned long>(k));
    } else {
      if (x == 0) fail(ErrKind::InternalError, "BetaPoly::eval", "pole at zero");
      total += v / rat_pow(x, static_cast<unsigned long>(-k));
    }
  }
  return total;
}

bool BetaPoly::dyadic() const {
  for (const auto& [k, v] : c_) {
    Int d = v.get_den();
    while (d % 2 == 0) d /= 2;
    if (d != 1) return false;
  }
  return true;
}

std::string BetaPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    Rat a = it->second;
    int k = it->first;
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
    bool unit = (a == 1 && k != 0);
    if (!unit) os << rat_str(a);
    if (k != 0) {
      if (!unit) os << "*";
      os << "u";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

BetaPoly parse_betapoly(const std::string& text) {
  // Grammar: sum of terms; term = [sign] coefficient? [* ] u [^ int]?
  BetaPoly out;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_int = [&]() -> std::string {
    size_t j = i;
    if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
    size_t k = j;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
    if (k == j)
      fail(ErrKind::SyntaxError, "input:" + std::to_string(i + 1), "expected integer");
    std::string s = text.substr(i, k - i);
    i = k;
    return s;
  };
  skip();
  bool anything = false;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      ++i;
      skip();
    }
    Rat coeff(1);
    bool have_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::string num = parse_int();
      Rat v(num);
      v.canonicalize();
      skip();
      if (i < text.size() && text[i] == '/') {
        ++i;
        skip();
        std::string den = parse_int();
        Rat d(den);
        d.canonicalize();
        if (d == 0)
          fail(ErrKind::SyntaxError, "input:" + std::to_string(i), "zero denominator");
        v /= d;
      }
      coeff = v;
      have_coeff = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    int power = 0;
    if (i < text.size() && text[i] == 'u') {
      ++i;
      power = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        power = std::stoi(parse_int());
      }
    } else if (!have_coeff) {
      fail(ErrKind::SyntaxError, "input:" + std::to_string(i + 1), "expected term");
    }
    out.add(power, coeff * sign);
    anything = true;
  }
  if (!anything) fail(ErrKind::SyntaxError, "input:1", "empty polynomial");
  return out;
}

BetaPoly beta_torus() {
  BetaPoly p = BetaPoly::u();
  p.add(0, Rat(-1));
  return p;
}

}  // namespace motfib
