#include "resdyn/moduli.hpp"

#include <algorithm>

#include "resdyn/errors.hpp"
#include "resdyn/resultant.hpp"
#include "resdyn/univariate.hpp"

namespace resdyn {
namespace {

constexpr int kChartAttempts = 16;

struct ChartFailure {};

void require_p1(const MorphismModel& phi, const char* what) {
  if (phi.dimension() != 1) throw InvalidArgument(std::string(what) + " is defined for maps of P^1 only");
}

// Dehomogenize at Y = 1: form coefficient k multiplies X^{deg-k} Y^k.
Polynomial affine_part(const HomogeneousForm& form) {
  const auto deg = static_cast<std::size_t>(form.degree());
  std::vector<Rational> asc(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) asc[deg - k] = form[k];
  return Polynomial(std::move(asc));
}

// Dehomogenize at X = 1 in w = Y/X.
Polynomial chart_at_infinity(const HomogeneousForm& form) { return Polynomial(form.coefficients()); }

std::vector<Rational> power_sums_in_chart(const MorphismModel& phi, int count) {
  const HomogeneousForm fixed = fixed_point_form(phi);
  const Polynomial f = affine_part(fixed);
  const int at_infinity = fixed.degree() - f.degree();

  std::vector<Rational> sums(static_cast<std::size_t>(count));
  if (f.degree() >= 1) {
    const Polynomial p = affine_part(phi.form(0));
    const Polynomial q = affine_part(phi.form(1));
    const Polynomial numerator = p.derivative() * q - p * q.derivative();
    const auto denominator_inverse = inverse_mod(q * q, f);
    if (!denominator_inverse) throw ChartFailure{};
    const Polynomial multiplier = divmod(numerator * *denominator_inverse, f).second;
    Polynomial power = Polynomial::constant(1);
    for (int j = 0; j < count; ++j) {
      power = divmod(power * multiplier, f).second;
      sums[static_cast<std::size_t>(j)] += trace_mod(power, f);
    }
  }
  if (at_infinity > 0) {
    // psi(w) = phi_1(1, w) / phi_0(1, w) with psi(0) = 0.
    const Polynomial a = chart_at_infinity(phi.form(1));
    const Polynomial b = chart_at_infinity(phi.form(0));
    const Rational b0 = b(Rational());
    if (b0.is_zero()) throw ChartFailure{};
    const Rational lambda =
        (a.derivative()(Rational()) * b0 - a(Rational()) * b.derivative()(Rational())) / (b0 * b0);
    Rational power = 1;
    for (int j = 0; j < count; ++j) {
      power *= lambda;
      sums[static_cast<std::size_t>(j)] += Rational(at_infinity) * power;
    }
  }
  return sums;
}

}  // namespace

HomogeneousForm fixed_point_form(const MorphismModel& phi) {
  require_p1(phi, "fixed_point_form");
  const HomogeneousForm x(1, 1, {Rational(1), Rational(0)});
  const HomogeneousForm y(1, 1, {Rational(0), Rational(1)});
  HomogeneousForm out = y * phi.form(0) - x * phi.form(1);
  if (out.is_zero()) throw DegenerateInput("fixed-point form vanishes identically (identity map)");
  return out;
}

std::vector<Rational> multiplier_power_sums(const MorphismModel& phi, int count) {
  require_p1(phi, "multiplier_power_sums");
  if (count < 0) throw InvalidArgument("negative power-sum count");
  if (macaulay_resultant(phi).vanishes()) throw NotAMorphism("Res = 0: the forms have a common zero");
  // The spectrum is conjugation-invariant, so a failed chart is retried
  // after a translation z -> z + t.
  for (int attempt = 0; attempt < kChartAttempts; ++attempt) {
    const long t = attempt == 0 ? 0 : (attempt % 2 == 1 ? (attempt + 1) / 2 : -(attempt / 2));
    try {
      if (t == 0) return power_sums_in_chart(phi, count);
      const LinearMap shift = LinearMap::from_rows({{Rational(1), Rational(t)}, {Rational(0), Rational(1)}});
      return power_sums_in_chart(conjugate(phi, shift), count);
    } catch (const ChartFailure&) {
    }
  }
  throw DegenerateInput("no usable chart found for the multiplier computation");
}

MultiplierSpectrum multiplier_spectrum(const MorphismModel& phi) {
  MultiplierSpectrum out;
  out.power_sums = multiplier_power_sums(phi, phi.degree() + 1);
  out.elementary_symmetric = elementary_from_power_sums(out.power_sums);
  return out;
}

std::vector<Rational> elementary_from_power_sums(std::span<const Rational> power_sums) {
  std::vector<Rational> e = {Rational(1)};
  for (std::size_t k = 1; k <= power_sums.size(); ++k) {
    Rational s;
    for (std::size_t i = 1; i <= k; ++i) {
      const Rational term = e[k - i] * power_sums[i - 1];
      s += (i % 2 == 1) ? term : -term;
    }
    e.push_back(s / Rational(static_cast<long>(k)));
  }
  return {e.begin() + 1, e.end()};
}

std::vector<Rational> power_sums_from_elementary(std::span<const Rational> elementary) {
  std::vector<Rational> e = {Rational(1)};
  e.insert(e.end(), elementary.begin(), elementary.end());
  std::vector<Rational> p;
  for (std::size_t k = 1; k <= elementary.size(); ++k) {
    Rational s = Rational(static_cast<long>(k)) * e[k];
    if (k % 2 == 0) s = -s;
    for (std::size_t i = 1; i < k; ++i) {
      const Rational term = e[k - i] * p[i - 1];
      s += ((k - 1 + i) % 2 == 0) ? term : -term;
    }
    p.push_back(s);
  }
  return p;
}

SigmaPair sigma_invariants(const MorphismModel& phi) {
  if (phi.dimension() != 1 || phi.degree() != 2) {
    throw InvalidArgument("sigma invariants are defined for degree-2 maps of P^1");
  }
  const auto e = multiplier_spectrum(phi).elementary_symmetric;
  return {e[0], e[1]};
}

std::string_view to_string(ModuliKind kind) {
  return kind == ModuliKind::sigma_invariants ? "sigma_invariants" : "coefficient_proxy";
}

std::vector<Integer> primitive_projective_point(std::span<const Rational> point) {
  Integer lcm = 1;
  for (const auto& c : point) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.raw().get_den_mpz_t());
  std::vector<Integer> out;
  Integer content = 0;
  for (const auto& c : point) {
    out.push_back(c.numerator() * (lcm / c.denominator()));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (content == 0) throw InvalidArgument("the zero tuple is not a projective point");
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  return out;
}

double projective_log_height(std::span<const Integer> primitive_point) {
  Integer best = 0;
  for (const auto& c : primitive_point) {
    if (abs(c) > best) best = abs(c);
  }
  return log_abs(best);
}

ModuliPoint moduli_height(const MorphismModel& phi) {
  ModuliPoint out;
  if (phi.dimension() == 1 && phi.degree() == 2) {
    const SigmaPair sigma = sigma_invariants(phi);
    out.kind = ModuliKind::sigma_invariants;
    out.sigma = sigma;
    const std::vector<Rational> point = {sigma.sigma1, sigma.sigma2, Rational(1)};
    out.projective_point = primitive_projective_point(point);
  } else {
    if (macaulay_resultant(phi).vanishes()) throw NotAMorphism("Res = 0: the forms have a common zero");
    out.kind = ModuliKind::coefficient_proxy;
    out.projective_point = primitive_coefficients(phi);
  }
  out.height = projective_log_height(out.projective_point);
  return out;
}

}  // namespace resdyn
