#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "airy/rational.hpp"

namespace airy {

/// Univariate polynomial over Q in the variable z. Zero coefficients are never
/// stored; the zero polynomial has degree `Polynomial::kMinusInfinity`.
class Polynomial {
 public:
  static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

  Polynomial() = default;
  Polynomial(Rational c) { set(0, std::move(c)); }  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}    // NOLINT(google-explicit-constructor)

  static Polynomial monomial(int degree, Rational c = Rational(1)) {
    Polynomial p;
    p.set(degree, std::move(c));
    return p;
  }

  /// Builds from dense coefficients, index = degree.
  static Polynomial from_dense(const std::vector<Rational>& coeffs) {
    Polynomial p;
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.set(static_cast<int>(i), coeffs[i]);
    return p;
  }

  int degree() const { return terms_.empty() ? kMinusInfinity : terms_.rbegin()->first; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational leading() const { return is_zero() ? Rational(0) : terms_.rbegin()->second; }

  void set(int degree, Rational c) {
    if (degree < 0) throw std::invalid_argument("Polynomial: negative degree");
    if (c.is_zero())
      terms_.erase(degree);
    else
      terms_[degree] = std::move(c);
  }

  const std::map<int, Rational>& terms() const { return terms_; }

  /// Dense coefficient array up to the degree (empty for zero).
  std::vector<Rational> dense() const {
    if (is_zero()) return {};
    std::vector<Rational> out(static_cast<std::size_t>(degree()) + 1);
    for (const auto& [d, c] : terms_) out[static_cast<std::size_t>(d)] = c;
    return out;
  }

  Rational evaluate(const Rational& x) const {
    Rational acc(0);
    for (int d = degree(); d >= 0; --d) acc = acc * x + coeff(d);
    return acc;
  }

  Polynomial derivative() const {
    Polynomial out;
    for (const auto& [d, c] : terms_)
      if (d > 0) out.set(d - 1, c * Rational(d));
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [d, c] : o.terms_) set(d, coeff(d) + c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [d, c] : o.terms_) set(d, coeff(d) - c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [d, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [da, ca] : a.terms_)
      for (const auto& [db, cb] : b.terms_) out.set(da + db, out.coeff(da + db) + ca * cb);
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Quotient and remainder by a nonzero divisor.
  friend std::pair<Polynomial, Polynomial> divmod(Polynomial num, const Polynomial& den) {
    if (den.is_zero()) throw std::domain_error("Polynomial: division by zero");
    Polynomial quot;
    const int dd = den.degree();
    const Rational lead = den.leading();
    while (!num.is_zero() && num.degree() >= dd) {
      const int shift = num.degree() - dd;
      const Rational f = num.leading() / lead;
      quot.set(shift, f);
      for (const auto& [d, c] : den.terms_) num.set(d + shift, num.coeff(d + shift) - f * c);
    }
    return {std::move(quot), std::move(num)};
  }

  std::string str(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [d, c] = *it;
      std::string body = c.str();
      if (d > 0) {
        const std::string power = d == 1 ? var : var + "^" + std::to_string(d);
        body = c == Rational(1) ? power : (c == Rational(-1) ? "-" + power : body + "*" + power);
      }
      if (!out.empty()) out += body[0] == '-' ? " - " + body.substr(1) : " + " + body;
      else out = body;
    }
    return out;
  }

 private:
  std::map<int, Rational> terms_;
};

}  // namespace airy
