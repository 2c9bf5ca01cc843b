#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "resdyn/dense_matrix.hpp"
#include "resdyn/rational.hpp"

namespace resdyn {

// Exponent tuple (i_0, ..., i_n).
using MultiIndex = std::vector<int>;

// All monomials of total degree d in n+1 variables, in descending
// lexicographic order (X_0^d first, X_n^d last). Instances are cached and
// shared; references stay valid for the life of the process.
class MonomialBasis {
 public:
  static const MonomialBasis& get(int n, int d);

  int dimension() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return monomials_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  // Throws InvalidArgument for a tuple of the wrong length or weight.
  std::size_t index_of(const MultiIndex& exponents) const;

  // Index table for products: product_index(a, b, i, j) is the position of
  // monomial_i(a) * monomial_j(b) in the degree a+b basis.
  static const std::vector<std::size_t>& product_table(int n, int da, int db);

 private:
  MonomialBasis(int n, int d);

  int n_;
  int d_;
  std::vector<MultiIndex> monomials_;
};

std::size_t binomial(int top, int bottom);

// A degree-d form in n+1 variables with dense coefficients over the basis.
class HomogeneousForm {
 public:
  HomogeneousForm(int n, int d);
  HomogeneousForm(int n, int d, std::vector<Rational> coefficients);

  int dimension() const { return n_; }
  int degree() const { return d_; }
  const MonomialBasis& basis() const { return MonomialBasis::get(n_, d_); }

  const std::vector<Rational>& coefficients() const { return coefficients_; }
  const Rational& operator[](std::size_t i) const { return coefficients_[i]; }
  Rational& operator[](std::size_t i) { return coefficients_[i]; }
  const Rational& coefficient(const MultiIndex& exponents) const;
  void set(const MultiIndex& exponents, Rational value);

  bool is_zero() const;
  Rational evaluate(std::span<const Rational> point) const;

  friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);
  friend HomogeneousForm operator+(const HomogeneousForm& a, const HomogeneousForm& b);
  friend HomogeneousForm operator-(const HomogeneousForm& a, const HomogeneousForm& b);
  friend HomogeneousForm operator*(const Rational& s, const HomogeneousForm& a);
  friend bool operator==(const HomogeneousForm&, const HomogeneousForm&) = default;

 private:
  int n_;
  int d_;
  std::vector<Rational> coefficients_;
};

// n+1 forms of a common degree d >= 1, not all zero: a point of P^N with
// N = C(n+d, d)(n+1) - 1. Whether it is a morphism is decided by Res.
class MorphismModel {
 public:
  explicit MorphismModel(std::vector<HomogeneousForm> forms);
  // Coefficients per form in basis order.
  static MorphismModel from_coefficients(int n, int d,
                                         const std::vector<std::vector<Rational>>& forms);

  int dimension() const { return n_; }
  int degree() const { return d_; }
  const std::vector<HomogeneousForm>& forms() const { return forms_; }
  const HomogeneousForm& form(std::size_t i) const { return forms_[i]; }
  std::size_t projective_dimension() const;

  // Coefficients of all forms concatenated, forms in order.
  std::vector<Rational> flat_coefficients() const;
  MorphismModel scaled(const Rational& lambda) const;

  friend bool operator==(const MorphismModel&, const MorphismModel&) = default;

 private:
  int n_;
  int d_;
  std::vector<HomogeneousForm> forms_;
};

// An element of PGL_{n+1} represented by an invertible (n+1)x(n+1) matrix,
// acting on column vectors of coordinates.
class LinearMap {
 public:
  // Throws InvalidArgument if the matrix is not square or is singular.
  explicit LinearMap(DenseMatrix<Rational> matrix);
  static LinearMap identity(int n);
  static LinearMap from_rows(const std::vector<std::vector<Rational>>& rows);

  int dimension() const { return static_cast<int>(matrix_.rows()) - 1; }
  const DenseMatrix<Rational>& matrix() const { return matrix_; }
  const Rational& determinant() const { return det_; }

  DenseMatrix<Rational> adjugate() const;
  LinearMap inverse() const;
  LinearMap scaled(const Rational& lambda) const;
  // Matrix product this * other, i.e. the map x -> this(other(x)).
  LinearMap compose(const LinearMap& other) const;
  std::vector<Rational> apply(std::span<const Rational> point) const;

  friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.matrix_ == b.matrix_; }

 private:
  DenseMatrix<Rational> matrix_;
  Rational det_;
};

// lambda * phi with integral coefficients of gcd 1 and the first nonzero
// coefficient positive. Throws InvalidArgument on the zero model.
MorphismModel normalize_primitive(const MorphismModel& phi);
// Flat integer coefficients of normalize_primitive(phi).
std::vector<Integer> primitive_coefficients(const MorphismModel& phi);
bool projectively_equal(const MorphismModel& a, const MorphismModel& b);

// min over all coefficients of all forms of ord_p.
long min_coeff_valuation(const MorphismModel& phi, const Integer& p);

// phi^f = f^{-1} o phi o f, computed as adj(f) * (phi o f). Right action:
// conjugate(conjugate(phi, f), g) ~ conjugate(phi, f.compose(g)).
MorphismModel conjugate(const MorphismModel& phi, const LinearMap& f);

// (phi_0(P), ..., phi_n(P)). Throws InvalidArgument on the zero point and
// IndeterminatePoint when every coordinate vanishes.
std::vector<Rational> evaluate(const MorphismModel& phi, std::span<const Rational> point);

// log max |a_I| over the primitive model.
double coefficient_height(const MorphismModel& phi);

// Natural log of |x| for nonzero x, valid beyond double range.
double log_abs(const Integer& x);

// Deterministic text key of the primitive model: forms separated by '|',
// coefficients by ','.
std::string canonical_key(const MorphismModel& phi);

bool projective_points_equal(std::span<const Rational> a, std::span<const Rational> b);

namespace detail {

// Integral conjugation on flat coefficient vectors: adj(f) * (phi o f) for
// integer f. No normalization.
std::vector<Integer> conjugate_integral(int n, int d, std::span<const Integer> coefficients,
                                        const DenseMatrix<Integer>& f);

// Divide out content and fix the sign; returns false for the zero vector.
bool make_primitive(std::vector<Integer>& coefficients);

// Integer adjugate of a square integer matrix.
DenseMatrix<Integer> integer_adjugate(const DenseMatrix<Integer>& m);

}  // namespace detail

}  // namespace resdyn
