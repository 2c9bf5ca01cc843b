#pragma once

#include <utility>
#include <vector>

#include "resdyn/rational.hpp"

namespace resdyn {

// p-adic valuation result; the valuation of zero is an explicit infinity,
// never a large finite number.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(true, 0); }
  static Valuation finite(long value) { return Valuation(false, value); }

  bool is_infinite() const { return infinite_; }
  // Throws InvalidArgument when infinite.
  long value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(bool infinite, long value) : infinite_(infinite), value_(value) {}

  bool infinite_;
  long value_;
};

bool is_prime(const Integer& n);

// ord_p(numerator) - ord_p(denominator); infinite for x = 0.
Valuation valuation(const Rational& x, const Integer& p);

// ord_p of a nonzero integer; no primality check, p >= 2.
long integer_valuation(const Integer& n, const Integer& p);

// Primes p <= floor(bound), ascending. Throws InvalidArgument for bound < 1.
std::vector<Integer> primes_up_to(const Rational& bound);

// Trial division to 10^6, then Pollard-Brent. Factors |n| for n != 0 and
// returns (prime, exponent) pairs ascending. Throws UnfactoredResidue when a
// composite cofactor resists the rho search.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

}  // namespace resdyn
