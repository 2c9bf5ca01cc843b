#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "resdyn/moduli.hpp"
#include "resdyn/morphism.hpp"
#include "resdyn/reduction.hpp"

namespace resdyn {

enum class ConjugacyStatus { conjugate, not_conjugate, unknown };
std::string_view to_string(ConjugacyStatus status);

// A `conjugate` verdict carries a witness f with conjugate(phi, f) ~ psi,
// i.e. psi = phi^f, re-verified exactly before it is returned. A
// `not_conjugate` verdict names the invariant that separates the two maps.
struct ConjugacyVerdict {
  ConjugacyStatus status = ConjugacyStatus::unknown;
  std::optional<LinearMap> witness;
  std::string separating_invariant;
};

// Semidecision for degree-2 maps of P^1: sigma invariants first, then a
// search over integer matrices with entries in [-box, box].
ConjugacyVerdict conjugacy_test(const MorphismModel& phi, const MorphismModel& psi,
                                const SearchBudget& budget);

// Integer matrices of the conjugacy search, in search order: the identity,
// then increasing max |entry|, then lexicographic with 0, 1, -1, 2, -2, ...;
// only primitive nonsingular matrices with positive first nonzero entry.
std::vector<DenseMatrix<Integer>> conjugacy_search_matrices(int box);

// z + b/z as [X^2 + b Y^2 : XY].
MorphismModel twist_family_member(const Rational& b);

// phi_b and phi_c are Q-conjugate iff b/c is a rational square.
bool twist_family_test(const Rational& b, const Rational& c);

struct TwistBucket {
  SigmaPair key;
  // One representative per K-class found: its earliest input.
  std::vector<MorphismModel> members;
  // Input indices belonging to each member class.
  std::vector<std::vector<std::size_t>> member_inputs;
  // Pairs of member positions left undecided by the search.
  std::vector<std::pair<std::size_t, std::size_t>> unknown_pairs;
};

// Groups by exact sigma invariants (buckets in order of first appearance),
// then merges K-classes on definite `conjugate` verdicts.
std::vector<TwistBucket> bucket_twists(std::span<const MorphismModel> classes, const SearchBudget& budget);

}  // namespace resdyn
