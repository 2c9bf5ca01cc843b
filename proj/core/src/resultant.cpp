#include "resdyn/resultant.hpp"

#include "resdyn/errors.hpp"

namespace resdyn {
namespace {

DenseMatrix<Rational> shifted_by(const DenseMatrix<Rational>& m, const Rational& t) {
  DenseMatrix<Rational> out = m;
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += t;
  return out;
}

}  // namespace

std::string_view to_string(ResultantMethod method) {
  switch (method) {
    case ResultantMethod::sylvester:
      return "sylvester";
    case ResultantMethod::macaulay_quotient:
      return "macaulay_quotient";
    case ResultantMethod::perturbation:
      return "perturbation";
  }
  return "unknown";
}

DenseMatrix<Rational> sylvester_matrix(const HomogeneousForm& f, const HomogeneousForm& g) {
  if (f.dimension() != 1 || g.dimension() != 1) throw InvalidArgument("Sylvester matrix needs binary forms");
  if (f.degree() != g.degree()) throw InvalidArgument("Sylvester resultant needs forms of equal degree");
  const auto d = static_cast<std::size_t>(f.degree());
  if (d == 0) throw InvalidArgument("Sylvester resultant needs degree at least 1");
  DenseMatrix<Rational> m(2 * d, 2 * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k <= d; ++k) {
      m(r, r + k) = f[k];
      m(d + r, r + k) = g[k];
    }
  }
  return m;
}

Rational sylvester_resultant(const HomogeneousForm& f, const HomogeneousForm& g, DeterminantBackend backend) {
  return exact_determinant(sylvester_matrix(f, g), backend);
}

MacaulayMatrix build_macaulay_matrix(const MorphismModel& phi) {
  const int n = phi.dimension();
  const int d = phi.degree();
  MacaulayMatrix out;
  out.critical_degree = (n + 1) * (d - 1) + 1;
  const auto& basis = MonomialBasis::get(n, out.critical_degree);
  out.monomials = basis.monomials();
  const std::size_t size = basis.size();
  out.matrix = DenseMatrix<Rational>(size, size);
  const auto& form_basis = MonomialBasis::get(n, d);
  for (std::size_t row = 0; row < size; ++row) {
    const MultiIndex& alpha = out.monomials[row];
    int assigned = -1;
    int divisible = 0;
    for (int k = 0; k <= n; ++k) {
      if (alpha[static_cast<std::size_t>(k)] >= d) {
        ++divisible;
        if (assigned < 0) assigned = k;
      }
    }
    out.assigned_form.push_back(assigned);
    if (divisible >= 2) out.reduced_minor_index.push_back(row);
    MultiIndex shift = alpha;
    shift[static_cast<std::size_t>(assigned)] -= d;
    const auto& form = phi.form(static_cast<std::size_t>(assigned));
    MultiIndex target(alpha.size());
    for (std::size_t t = 0; t < form_basis.size(); ++t) {
      if (form[t].is_zero()) continue;
      for (std::size_t v = 0; v < alpha.size(); ++v) target[v] = shift[v] + form_basis[t][v];
      out.matrix(row, basis.index_of(target)) = form[t];
    }
  }
  return out;
}

std::optional<Rational> macaulay_quotient(const MorphismModel& phi, DeterminantBackend backend) {
  const MacaulayMatrix mac = build_macaulay_matrix(phi);
  const Rational denominator = exact_determinant(mac.minor(), backend);
  if (denominator.is_zero()) return std::nullopt;
  return exact_determinant(mac.matrix, backend) / denominator;
}

Rational perturbation_resultant(const MorphismModel& phi, DeterminantBackend backend) {
  const MacaulayMatrix mac = build_macaulay_matrix(phi);
  const DenseMatrix<Rational> minor = mac.minor();
  const std::size_t needed = mac.matrix.rows() + 1;
  std::vector<Rational> nodes;
  std::vector<Rational> values;
  // det(M' + tI) has at most size(M') integer roots, so this terminates.
  for (long t = 1; nodes.size() < needed; ++t) {
    const Rational denominator = exact_determinant(shifted_by(minor, Rational(t)), backend);
    if (denominator.is_zero()) continue;
    nodes.emplace_back(t);
    values.push_back(exact_determinant(shifted_by(mac.matrix, Rational(t)), backend) / denominator);
  }
  // Lagrange interpolation evaluated at t = 0.
  Rational constant;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Rational weight = values[j];
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k == j) continue;
      weight *= -nodes[k] / (nodes[j] - nodes[k]);
    }
    constant += weight;
  }
  return constant;
}

ResultantValue macaulay_resultant(const MorphismModel& phi, DeterminantBackend backend) {
  if (phi.dimension() == 1) {
    return {sylvester_resultant(phi.form(0), phi.form(1), backend), ResultantMethod::sylvester};
  }
  if (auto quotient = macaulay_quotient(phi, backend)) {
    return {*quotient, ResultantMethod::macaulay_quotient};
  }
  return {perturbation_resultant(phi, backend), ResultantMethod::perturbation};
}

}  // namespace resdyn
