#pragma once

#include <complex>
#include <compare>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qmod {

using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational re + i*im.
struct GaussianRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  bool operator==(const GaussianRational&) const = default;
};

/// Exponent pair of a monomial q^q * s^s.
struct Exponent {
  int q = 0;
  int s = 0;
  auto operator<=>(const Exponent&) const = default;
};

/// Exact scalar: a Laurent polynomial in q and s with Gaussian-rational
/// coefficients. q and s are treated as real symbols, so conjugation only
/// flips the imaginary parts.
class Coeff {
 public:
  Coeff() = default;
  Coeff(long long n);  // NOLINT: integers promote implicitly
  Coeff(const Rational& r);  // NOLINT

  static Coeff monomial(GaussianRational c, int q_exp, int s_exp);
  static Coeff q_pow(int e) { return monomial({1, 0}, e, 0); }
  static Coeff s_pow(int e) { return monomial({1, 0}, 0, e); }
  static Coeff i() { return monomial({0, 1}, 0, 0); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::map<Exponent, GaussianRational>& terms() const { return terms_; }

  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator-() const;
  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o) { return *this += -o; }
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
  bool operator==(const Coeff& o) const { return terms_ == o.terms_; }

  Coeff conj() const;
  Coeff scale_q(int e) const;  ///< multiply by q^e

  std::complex<double> eval(double q, double s = 1.0) const;

  /// Canonical text, e.g. "(1 - s^2)", "(q^-2)", "(1/2 + 3i*q)". Terms are
  /// ordered by (q exponent, s exponent).
  std::string to_string() const;

 private:
  std::map<Exponent, GaussianRational> terms_;
};

inline Coeff operator*(long long n, const Coeff& c) { return Coeff(n) * c; }

}  // namespace qmod
