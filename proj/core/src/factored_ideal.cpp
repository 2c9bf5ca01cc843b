#include "resdyn/factored_ideal.hpp"

#include "resdyn/errors.hpp"
#include "resdyn/number_theory.hpp"

namespace resdyn {

FactoredIdeal FactoredIdeal::from_factors(const std::map<Integer, int>& factors) {
  FactoredIdeal ideal;
  for (const auto& [p, e] : factors) {
    if (!is_prime(p)) throw InvalidArgument("ideal factor " + p.get_str() + " is not prime");
    if (e < 0) throw InvalidArgument("negative exponent in factored ideal");
    if (e > 0) ideal.factors_[p] = e;
  }
  return ideal;
}

FactoredIdeal FactoredIdeal::principal(const Integer& n) {
  FactoredIdeal ideal;
  for (const auto& [p, e] : factor_integer(n)) ideal.factors_[p] = e;
  return ideal;
}

int FactoredIdeal::exponent(const Integer& p) const {
  const auto it = factors_.find(p);
  return it == factors_.end() ? 0 : it->second;
}

FactoredIdeal FactoredIdeal::operator*(const FactoredIdeal& other) const {
  FactoredIdeal out = *this;
  for (const auto& [p, e] : other.factors_) out.factors_[p] += e;
  return out;
}

Integer ideal_norm(const FactoredIdeal& ideal) {
  Integer norm = 1;
  for (const auto& [p, e] : ideal.factors()) norm *= pow(p, static_cast<unsigned long>(e));
  return norm;
}

}  // namespace resdyn
