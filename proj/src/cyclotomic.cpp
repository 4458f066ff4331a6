#include "bicotwist/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace bicotwist {

namespace {

using Poly = std::vector<Rational>;  // low degree first

void poly_trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// Euclidean division a = q*b + r over Q, b nonzero.
void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  Poly bb = b;
  poly_trim(bb);
  if (bb.size() == 1 && bb[0] == 0) throw Error("polynomial division by zero");
  poly_trim(a);
  q.assign(std::max<std::size_t>(1, a.size() >= bb.size() ? a.size() - bb.size() + 1 : 1),
           Rational(0));
  while (a.size() >= bb.size() && !(a.size() == 1 && a[0] == 0)) {
    std::size_t shift = a.size() - bb.size();
    Rational factor = a.back() / bb.back();
    q[shift] = factor;
    for (std::size_t i = 0; i < bb.size(); ++i) a[shift + i] -= factor * bb[i];
    poly_trim(a);
    if (a.size() == 1 && a[0] == 0) break;
    if (a.size() >= bb.size() && a.back() == 0) poly_trim(a);
  }
  r = a;
  poly_trim(r);
}

Poly poly_mod(const Poly& a, const Poly& m) {
  Poly q, r;
  poly_divmod(a, m, q, r);
  return r;
}

std::mutex cache_mutex;

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  std::size_t slash = text.find('/');
  auto check_int = [&](const std::string& s) {
    if (s.empty()) throw Error("malformed rational literal '" + text + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error("malformed rational literal '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw Error("malformed rational literal '" + text + "'");
  };
  mpq_class value;
  if (slash == std::string::npos) {
    check_int(text);
    value.set_str(text, 10);
  } else {
    check_int(text.substr(0, slash));
    check_int(text.substr(slash + 1));
    if (value.set_str(text, 10) != 0) throw Error("malformed rational literal '" + text + "'");
    if (value.get_den() == 0) throw Error("zero denominator in '" + text + "'");
  }
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

long euler_phi(long n) {
  if (n <= 0) throw Error("euler_phi expects a positive integer");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<Rational>& cyclotomic_polynomial(long n) {
  if (n <= 0) throw Error("cyclotomic_polynomial expects a positive integer");
  std::lock_guard<std::mutex> lock(cache_mutex);
  static std::map<long, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up.
  std::function<const Poly&(long)> get = [&](long m) -> const Poly& {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    Poly numerator(m + 1, Rational(0));
    numerator[0] = -1;
    numerator[m] = 1;
    for (long d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      Poly q, r;
      poly_divmod(numerator, get(d), q, r);
      if (!(r.size() == 1 && r[0] == 0)) throw Error("cyclotomic polynomial division failed");
      numerator = q;
    }
    return cache.emplace(m, std::move(numerator)).first->second;
  };
  return get(n);
}

Cyclotomic::Cyclotomic(long order, std::vector<Rational> coeffs) : order_(order) {
  if (order <= 0) throw Error("cyclotomic order must be positive");
  reduce(std::move(coeffs));
}

void Cyclotomic::reduce(std::vector<Rational> raw) {
  long phi = euler_phi(order_);
  if (raw.empty()) raw.assign(1, Rational(0));
  if (static_cast<long>(raw.size()) > phi) {
    raw = poly_mod(raw, cyclotomic_polynomial(order_));
  }
  raw.resize(phi, Rational(0));
  coeffs_ = std::move(raw);
}

Cyclotomic Cyclotomic::root_of_unity(long order, long power) {
  if (order <= 0) throw Error("root_of_unity: order must be positive");
  long k = power % order;
  if (k < 0) k += order;
  std::vector<Rational> raw(k + 1, Rational(0));
  raw[k] = 1;
  return Cyclotomic(order, std::move(raw));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::embedded(long new_order) const {
  if (new_order == order_) return *this;
  if (new_order <= 0 || new_order % order_ != 0)
    throw Error("cyclotomic embedding requires the original order to divide the new one");
  long stride = new_order / order_;
  std::vector<Rational> raw(static_cast<std::size_t>((coeffs_.size() - 1) * stride + 1),
                            Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[i * stride] = coeffs_[i];
  return Cyclotomic(new_order, std::move(raw));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  if (order_ != rhs.order_) {
    long m = std::lcm(order_, rhs.order_);
    *this = embedded(m);
    return *this += rhs.embedded(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) {
  if (order_ != rhs.order_) {
    long m = std::lcm(order_, rhs.order_);
    *this = embedded(m);
    return *this -= rhs.embedded(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
  if (order_ != rhs.order_) {
    long m = std::lcm(order_, rhs.order_);
    *this = embedded(m);
    return *this *= rhs.embedded(m);
  }
  reduce(poly_mul(coeffs_, rhs.coeffs_));
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  return (a - b).is_zero();
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error("division by zero in Q(zeta_" + std::to_string(order_) + ")");
  // Extended Euclid against Phi_N; gcd is a nonzero constant since Phi_N is
  // irreducible and deg(this) < deg(Phi_N).
  Poly r0 = cyclotomic_polynomial(order_);
  Poly r1 = coeffs_;
  poly_trim(r1);
  Poly s0{Rational(0)}, s1{Rational(1)};  // coefficients of `this`
  while (!(r1.size() == 1 && r1[0] == 0)) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = s0;
    Poly qs1 = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs1.size()), Rational(0));
    for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    poly_trim(s2);
    r0 = r1;
    s0 = s1;
    r1 = r;
    s1 = s2;
  }
  if (r0.size() != 1 || r0[0] == 0) throw Error("cyclotomic inverse: unexpected gcd");
  Rational scale = Rational(1) / r0[0];
  for (auto& c : s0) c *= scale;
  return Cyclotomic(order_, std::move(s0));
}

std::string Cyclotomic::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z" << order_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& value) { return os << value.str(); }

}  // namespace bicotwist
