#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "resdyn/factored_ideal.hpp"
#include "resdyn/morphism.hpp"

namespace resdyn {

// Bounds for the conjugator searches.
//  - max_power: diagonal moves diag(p^{a_0}, ..., p^{a_n}) with |a_i| <= max_power;
//    also the largest p-power in triangular moves.
//  - translation_depth: p-adic digit depth of translations (n = 1).
//  - conjugacy_box: entries in [-box, box] for PGL_2(Q) conjugacy search.
//  - max_translations: cap on p^depth; depth shrinks for large p.
struct SearchBudget {
  int max_power = 4;
  int translation_depth = 2;
  int conjugacy_box = 2;
  std::size_t max_translations = 256;

  static SearchBudget defaults(int degree) { return {degree + 2, 2, 2, 256}; }
  static SearchBudget none() { return {0, 0, 0, 256}; }
};

struct LocalExponent {
  Integer p;
  long e_model = 0;
  long eps_estimate = 0;
  // Proven lower bound on eps: Res(phi^f) = det(f)^{d^n(n+d)} Res(phi) fixes
  // e_p modulo gcd((n+1)d^n, d^n(n+d)).
  long eps_floor = 0;
  // True only when eps_estimate = 0.
  bool certified = false;
  // Conjugator attaining eps_estimate, when it differs from the identity.
  std::optional<LinearMap> conjugator;
};

struct ReductionReport {
  MorphismModel morphism;  // primitive model
  Rational res;            // Res of the primitive model
  std::vector<LocalExponent> local;
  FactoredIdeal minimal_resultant;
  Integer norm;
  Integer norm_lower_bound;
  bool fully_certified = false;

  // Primes whose estimated exponent stays positive.
  std::vector<Integer> bad_primes() const;
};

enum class ReductionStatus { good, bad_upper_bound, good_certified };
std::string_view to_string(ReductionStatus status);

// gcd((n+1) d^n, d^n (n+d)): e_p(phi^f) is congruent to e_p(phi) modulo it.
long exponent_congruence_modulus(int n, int d);

// ord_p(Res(Phi)) - (n+1) d^n min_I ord_p(a_I) for the model as given.
// Throws NotAMorphism when Res = 0.
long local_exponent(const MorphismModel& phi, const Integer& p);
long local_exponent(const MorphismModel& phi, const Integer& p, const Rational& res);

LocalExponent minimize_exponent(const MorphismModel& phi, const Integer& p, const SearchBudget& budget);

ReductionReport reduction_report(const MorphismModel& phi, const SearchBudget& budget);

ReductionStatus has_good_reduction(const MorphismModel& phi, const Integer& p, const SearchBudget& budget);

// Primes of norm at most B.
std::vector<Integer> s_b_primes(const Rational& bound);

// The conjugators searched by minimize_exponent, as primitive integer
// matrices in search order, identity excluded.
std::vector<DenseMatrix<Integer>> reduction_search_moves(int n, const Integer& p, const SearchBudget& budget);

}  // namespace resdyn
