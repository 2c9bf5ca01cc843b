#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "resdyn/rational.hpp"

namespace resdyn {

// Dense univariate polynomial over Q, coefficients in ascending degree.
// Trailing zeros are trimmed; the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

// Quotient and remainder; throws InvalidArgument for a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

// Inverse of a modulo m, or nullopt when gcd(a, m) is not constant.
std::optional<Polynomial> inverse_mod(const Polynomial& a, const Polynomial& m);

// Trace of multiplication by g on Q[z]/(m), deg m >= 1.
Rational trace_mod(const Polynomial& g, const Polynomial& m);

}  // namespace resdyn
