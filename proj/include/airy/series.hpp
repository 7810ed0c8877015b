#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "airy/errors.hpp"
#include "airy/rational.hpp"

namespace airy {

/// Truncated formal series  sum_j c_j x^(offset + j*step),  j < truncation_order.
class OffsetSeries {
 public:
  OffsetSeries(Rational offset, Rational step, std::vector<Rational> coefficients)
      : offset_(std::move(offset)), step_(std::move(step)), coeffs_(std::move(coefficients)) {
    if (step_.sign() <= 0) throw std::invalid_argument("OffsetSeries: step must be positive");
  }

  const Rational& offset() const { return offset_; }
  const Rational& step() const { return step_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  std::size_t truncation_order() const { return coeffs_.size(); }

  const Rational& operator[](std::size_t j) const { return coeffs_.at(j); }
  Rational exponent(std::size_t j) const { return offset_ + step_ * Rational(static_cast<long>(j)); }

  /// Coefficient of x^e; zero off the lattice. Throws past the truncation.
  Rational coefficient_at(const Rational& e) const {
    const Rational idx = (e - offset_) / step_;
    if (!idx.is_integer() || idx.sign() < 0) return Rational(0);
    const auto j = static_cast<std::size_t>(idx.to_int64());
    if (j >= coeffs_.size())
      throw std::out_of_range("OffsetSeries: exponent " + e.str() + " beyond truncation");
    return coeffs_[j];
  }

  OffsetSeries truncated(std::size_t order) const {
    std::vector<Rational> c(coeffs_.begin(), coeffs_.begin() + static_cast<long>(std::min(order, coeffs_.size())));
    return OffsetSeries(offset_, step_, std::move(c));
  }

  friend bool operator==(const OffsetSeries& a, const OffsetSeries& b) {
    return a.offset_ == b.offset_ && a.step_ == b.step_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Rational offset_;
  Rational step_;
  std::vector<Rational> coeffs_;
};

/// Cauchy product, truncated to the shorter input.
inline OffsetSeries series_mul(const OffsetSeries& a, const OffsetSeries& b) {
  if (a.step() != b.step())
    throw LatticeMismatch("series_mul: step " + a.step().str() + " vs " + b.step().str());
  const std::size_t n = std::min(a.truncation_order(), b.truncation_order());
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return OffsetSeries(a.offset() + b.offset(), a.step(), std::move(c));
}

/// a^e for e >= 1. Uses the power recurrence when the leading coefficient is
/// invertible, binary powering otherwise.
inline OffsetSeries series_pow(const OffsetSeries& a, unsigned e) {
  if (e == 0) throw std::invalid_argument("series_pow: exponent must be positive");
  const std::size_t n = a.truncation_order();
  const Rational offset = a.offset() * Rational(static_cast<long>(e));
  if (n == 0) return OffsetSeries(offset, a.step(), {});
  if (a[0].is_zero()) {
    OffsetSeries result = a;
    for (unsigned i = 1; i < e; ++i) result = series_mul(result, a);
    return result;
  }
  // b = a^e  =>  a * b' = e * a' * b, compared coefficientwise.
  std::vector<Rational> b(n, Rational(0));
  b[0] = pow(a[0], e);
  const Rational ee(static_cast<long>(e));
  for (std::size_t j = 1; j < n; ++j) {
    Rational acc(0);
    for (std::size_t i = 1; i <= j; ++i) {
      if (a[i].is_zero()) continue;
      const Rational w = (ee + Rational(1)) * Rational(static_cast<long>(i)) - Rational(static_cast<long>(j));
      acc += w * a[i] * b[j - i];
    }
    b[j] = acc / (Rational(static_cast<long>(j)) * a[0]);
  }
  return OffsetSeries(offset, a.step(), std::move(b));
}

}  // namespace airy
