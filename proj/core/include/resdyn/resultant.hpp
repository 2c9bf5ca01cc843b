#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "resdyn/dense_matrix.hpp"
#include "resdyn/determinant.hpp"
#include "resdyn/morphism.hpp"

namespace resdyn {

enum class ResultantMethod { sylvester, macaulay_quotient, perturbation };

std::string_view to_string(ResultantMethod method);

struct ResultantValue {
  Rational value;
  ResultantMethod method;

  bool vanishes() const { return value.is_zero(); }
};

// Macaulay matrix at the critical degree D = (n+1)(d-1)+1. Row and column i
// both belong to monomials[i]; the row holds X^{alpha - d e_k} * phi_k for
// the least k with alpha_k >= d.
struct MacaulayMatrix {
  int critical_degree = 0;
  std::vector<MultiIndex> monomials;
  std::vector<int> assigned_form;
  DenseMatrix<Rational> matrix;
  // Rows/columns of the non-reduced monomials (divisible by at least two
  // X_k^d); the submatrix on them is M'.
  std::vector<std::size_t> reduced_minor_index;

  DenseMatrix<Rational> minor() const { return matrix.principal_submatrix(reduced_minor_index); }
};

MacaulayMatrix build_macaulay_matrix(const MorphismModel& phi);

// 2d x 2d Sylvester matrix: d shifted rows of f, then d shifted rows of g,
// coefficients in descending powers of X.
DenseMatrix<Rational> sylvester_matrix(const HomogeneousForm& f, const HomogeneousForm& g);
Rational sylvester_resultant(const HomogeneousForm& f, const HomogeneousForm& g,
                             DeterminantBackend backend = DeterminantBackend::bareiss);

// det(M) / det(M'), or nullopt when det(M') = 0. Valid for every n >= 1.
std::optional<Rational> macaulay_quotient(const MorphismModel& phi,
                                          DeterminantBackend backend = DeterminantBackend::bareiss);

// Res via phi_k + t X_k^d: interpolates Res(t) = det(M + tI) / det(M' + tI)
// at C(n+D, n)+1 integer points t >= 1 where det(M' + tI) != 0, and returns
// the constant term Res(0).
Rational perturbation_resultant(const MorphismModel& phi,
                                DeterminantBackend backend = DeterminantBackend::bareiss);

// Sylvester for n = 1; otherwise the Macaulay quotient, falling back to the
// perturbation when det(M') = 0. Normalized so that Res(X_0^d, ..., X_n^d) = 1.
ResultantValue macaulay_resultant(const MorphismModel& phi,
                                  DeterminantBackend backend = DeterminantBackend::bareiss);

}  // namespace resdyn
