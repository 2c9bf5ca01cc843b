#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "resdyn/morphism.hpp"

namespace resdyn {

// Y*phi_0 - X*phi_1 for a map of P^1: degree d+1, roots are the fixed points
// with multiplicity. Throws DegenerateInput when it vanishes identically.
HomogeneousForm fixed_point_form(const MorphismModel& phi);

struct MultiplierSpectrum {
  std::vector<Rational> power_sums;            // p_1, ..., p_{d+1}
  std::vector<Rational> elementary_symmetric;  // sigma_1, ..., sigma_{d+1}
};

// p_j = sum of lambda_i^j over the d+1 fixed points, j = 1..count, exact.
std::vector<Rational> multiplier_power_sums(const MorphismModel& phi, int count);
MultiplierSpectrum multiplier_spectrum(const MorphismModel& phi);

// Newton's identities in both directions.
std::vector<Rational> elementary_from_power_sums(std::span<const Rational> power_sums);
std::vector<Rational> power_sums_from_elementary(std::span<const Rational> elementary);

struct SigmaPair {
  Rational sigma1;
  Rational sigma2;

  friend bool operator==(const SigmaPair&, const SigmaPair&) = default;
  friend auto operator<=>(const SigmaPair&, const SigmaPair&) = default;
};

// (sigma_1, sigma_2) of a degree-2 map of P^1; a complete invariant of its
// conjugacy class over the algebraic closure.
SigmaPair sigma_invariants(const MorphismModel& phi);

enum class ModuliKind { sigma_invariants, coefficient_proxy };
std::string_view to_string(ModuliKind kind);

struct ModuliPoint {
  ModuliKind kind = ModuliKind::coefficient_proxy;
  std::optional<SigmaPair> sigma;
  // [sigma_1 : sigma_2 : 1] as coprime integers, or the primitive
  // coefficients for the proxy.
  std::vector<Integer> projective_point;
  double height = 0.0;

  // The proxy depends on the model, not only on its conjugacy class.
  bool model_dependent() const { return kind == ModuliKind::coefficient_proxy; }
};

// Sigma-invariant point and its log height for (n, d) = (1, 2); the
// coefficient height of the primitive model otherwise.
ModuliPoint moduli_height(const MorphismModel& phi);

// Clears denominators and content of a nonzero rational point.
std::vector<Integer> primitive_projective_point(std::span<const Rational> point);
double projective_log_height(std::span<const Integer> primitive_point);

}  // namespace resdyn
