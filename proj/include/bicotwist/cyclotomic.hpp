#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace bicotwist {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (decimal-free). Throws Error on malformed input.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& value);

long euler_phi(long n);

// Coefficients of the n-th cyclotomic polynomial, low degree first, monic,
// length phi(n)+1. Cached per order.
const std::vector<Rational>& cyclotomic_polynomial(long n);

// An element of Q(zeta_N), stored as a polynomial in zeta_N of degree
// < phi(N), reduced modulo Phi_N. Within a fixed order the representation
// is canonical: equal values have identical coefficient vectors.
// Arithmetic between different orders embeds both operands into Q(zeta_lcm).
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}
  Cyclotomic(long value) : order_(1), coeffs_(1, Rational(value)) {}
  Cyclotomic(const Rational& value) : order_(1), coeffs_(1, value) {}
  Cyclotomic(long order, std::vector<Rational> coeffs);

  static Cyclotomic root_of_unity(long order, long power);

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  // True when the value lies in Q, i.e. all non-constant coefficients vanish.
  bool is_rational() const;
  Rational rational_part() const { return coeffs_[0]; }

  // Rewrites the element in Q(zeta_M); requires order() | M.
  Cyclotomic embedded(long new_order) const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);
  Cyclotomic& operator/=(const Cyclotomic& rhs);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Multiplicative inverse; throws Error on zero.
  Cyclotomic inverse() const;

  // Stable textual form, e.g. "0", "5/6", "z4", "1/2 - z12^5".
  std::string str() const;

 private:
  long order_;
  std::vector<Rational> coeffs_;  // length phi(order_), reduced mod Phi_order

  void reduce(std::vector<Rational> raw);  // raw poly of any degree
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& value);

}  // namespace bicotwist
