#include "qmod/coeff.hpp"

#include <cmath>
#include <sstream>

namespace qmod {

Coeff::Coeff(long long n) {
  if (n != 0) terms_[{0, 0}] = {Rational(n), 0};
}

Coeff::Coeff(const Rational& r) {
  if (r != 0) terms_[{0, 0}] = {r, 0};
}

Coeff Coeff::monomial(GaussianRational c, int q_exp, int s_exp) {
  Coeff out;
  if (!c.is_zero()) out.terms_[{q_exp, s_exp}] = std::move(c);
  return out;
}

bool Coeff::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
}

Coeff& Coeff::operator+=(const Coeff& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Coeff Coeff::operator+(const Coeff& o) const {
  Coeff out = *this;
  out += o;
  return out;
}

Coeff Coeff::operator-() const {
  Coeff out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
  Coeff out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      out += monomial(c1 * c2, e1.q + e2.q, e1.s + e2.s);
    }
  }
  return out;
}

Coeff Coeff::conj() const {
  Coeff out = *this;
  for (auto& [e, c] : out.terms_) c.im = -c.im;
  return out;
}

Coeff Coeff::scale_q(int e) const {
  if (e == 0) return *this;
  Coeff out;
  for (const auto& [ex, c] : terms_) out.terms_.emplace(Exponent{ex.q + e, ex.s}, c);
  return out;
}

std::complex<double> Coeff::eval(double q, double s) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms_) {
    const double mono = std::pow(q, e.q) * std::pow(s, e.s);
    acc += std::complex<double>(c.re.convert_to<double>(), c.im.convert_to<double>()) * mono;
  }
  return acc;
}

namespace {

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

std::string power_text(const char* sym, int e) {
  if (e == 0) return {};
  std::string out = sym;
  if (e != 1) out += "^" + std::to_string(e);
  return out;
}

}  // namespace

std::string Coeff::to_string() const {
  if (terms_.empty()) return "(0)";
  std::string out = "(";
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string sym;
    for (const auto& p : {power_text("q", e.q), power_text("s", e.s)}) {
      if (p.empty()) continue;
      if (!sym.empty()) sym += "*";
      sym += p;
    }
    std::string num;
    bool negative = false;
    if (c.im == 0) {
      negative = c.re < 0;
      const Rational mag = negative ? Rational(-c.re) : c.re;
      if (mag != 1 || sym.empty()) num = rational_text(mag);
    } else if (c.re == 0) {
      negative = c.im < 0;
      const Rational mag = negative ? Rational(-c.im) : c.im;
      num = (mag == 1 ? std::string() : rational_text(mag)) + "i";
    } else {
      num = "(" + rational_text(c.re) + (c.im < 0 ? "-" : "+") +
            rational_text(c.im < 0 ? Rational(-c.im) : c.im) + "i)";
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += num;
    if (!num.empty() && !sym.empty()) out += "*";
    out += sym;
    first = false;
  }
  return out + ")";
}

}  // namespace qmod
