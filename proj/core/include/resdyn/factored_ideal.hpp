#pragma once

#include <map>

#include "resdyn/rational.hpp"

namespace resdyn {

// Ideal of Z stored as prime -> exponent (all >= 1); empty is the unit ideal.
class FactoredIdeal {
 public:
  FactoredIdeal() = default;

  // Validates primality; zero exponents are dropped, negative ones rejected.
  static FactoredIdeal from_factors(const std::map<Integer, int>& factors);
  // The ideal (n) for nonzero n.
  static FactoredIdeal principal(const Integer& n);

  const std::map<Integer, int>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int exponent(const Integer& p) const;

  FactoredIdeal operator*(const FactoredIdeal& other) const;
  friend bool operator==(const FactoredIdeal&, const FactoredIdeal&) = default;

 private:
  std::map<Integer, int> factors_;
};

// Product of p^e over the factors; 1 for the unit ideal.
Integer ideal_norm(const FactoredIdeal& ideal);

}  // namespace resdyn
