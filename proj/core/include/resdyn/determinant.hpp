#pragma once

#include <string_view>

#include "resdyn/dense_matrix.hpp"
#include "resdyn/rational.hpp"

namespace resdyn {

enum class DeterminantBackend { bareiss, modular_crt };

std::string_view to_string(DeterminantBackend backend);
// Throws InvalidArgument for unknown names.
DeterminantBackend parse_determinant_backend(std::string_view name);

// Fraction-free Gaussian elimination with row pivoting.
Integer bareiss_determinant(DenseMatrix<Integer> m);

// Determinants modulo word-sized primes, recombined by CRT once the prime
// product exceeds twice the Hadamard bound; result in the symmetric range.
Integer modular_determinant(const DenseMatrix<Integer>& m);

// Square of the Hadamard bound: prod_i sum_j m_ij^2.
Integer hadamard_bound_squared(const DenseMatrix<Integer>& m);

// Scales each row to integers, runs the chosen integer backend, and divides
// the row scales back out. Both backends return the identical value.
Rational exact_determinant(const DenseMatrix<Rational>& m,
                           DeterminantBackend backend = DeterminantBackend::bareiss);

}  // namespace resdyn
