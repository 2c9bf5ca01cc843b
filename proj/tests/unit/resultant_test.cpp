#include <gtest/gtest.h>

#include "resdyn/determinant.hpp"
#include "resdyn/errors.hpp"
#include "resdyn/resultant.hpp"
#include "test_support.hpp"

namespace resdyn {
namespace {

using testing::quadratic;

// Laplace expansion along the first row; exponential, only for small sizes.
Rational cofactor_determinant(const DenseMatrix<Rational>& m) {
  const std::size_t size = m.rows();
  if (size == 1) return m(0, 0);
  Rational total = 0;
  for (std::size_t col = 0; col < size; ++col) {
    if (m(0, col).is_zero()) continue;
    DenseMatrix<Rational> minor(size - 1, size - 1);
    for (std::size_t i = 1; i < size; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < size; ++j) {
        if (j != col) minor(i - 1, jj++) = m(i, j);
      }
    }
    const Rational term = m(0, col) * cofactor_determinant(minor);
    total += col % 2 == 0 ? term : -term;
  }
  return total;
}

DenseMatrix<Integer> to_integer(const DenseMatrix<Rational>& m) {
  DenseMatrix<Integer> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).numerator();
  }
  return out;
}

HomogeneousForm binary(std::vector<long> coefficients) {
  std::vector<Rational> c(coefficients.begin(), coefficients.end());
  const int d = static_cast<int>(c.size()) - 1;
  return HomogeneousForm(1, d, std::move(c));
}

// Res(aX + bY, g) = g(-b, a) under the Sylvester layout.
Rational linear_resultant(long a, long b, const HomogeneousForm& g) {
  const std::vector<Rational> point = {Rational(-b), Rational(a)};
  return g.evaluate(point);
}

HomogeneousForm multiply_binary(const HomogeneousForm& f, const HomogeneousForm& g) { return f * g; }

TEST(DeterminantTest, Examples) {
  EXPECT_EQ(exact_determinant(DenseMatrix<Rational>::identity(5)), Rational(1));
  DenseMatrix<Rational> swap(2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  for (auto backend : {DeterminantBackend::bareiss, DeterminantBackend::modular_crt}) {
    EXPECT_EQ(exact_determinant(swap, backend), Rational(-1));
    EXPECT_EQ(exact_determinant(DenseMatrix<Rational>::identity(5), backend), Rational(1));
    EXPECT_EQ(exact_determinant(DenseMatrix<Rational>(3, 3), backend), Rational(0));
  }
}

TEST(DeterminantTest, BackendsAgreeOnRandom20x20) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_matrix(20, 9);
    EXPECT_EQ(bareiss_determinant(to_integer(m)), modular_determinant(to_integer(m)));
  }
}

TEST(DeterminantTest, MatchesCofactorExpansion) {
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix<Rational> m(5, 5);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = testing::random_rational(7);
    }
    const Rational expected = cofactor_determinant(m);
    EXPECT_EQ(exact_determinant(m, DeterminantBackend::bareiss), expected);
    EXPECT_EQ(exact_determinant(m, DeterminantBackend::modular_crt), expected);
  }
}

TEST(DeterminantTest, ModularHandlesHugeEntries) {
  DenseMatrix<Integer> m(3, 3);
  const Integer big("123456789012345678901234567890", 10);
  m(0, 0) = big;
  m(1, 1) = big;
  m(2, 2) = -big;
  m(0, 2) = 17;
  EXPECT_EQ(modular_determinant(m), bareiss_determinant(m));
}

TEST(DeterminantTest, ParseBackend) {
  EXPECT_EQ(parse_determinant_backend("modular_crt"), DeterminantBackend::modular_crt);
  EXPECT_THROW(parse_determinant_backend("lu"), InvalidArgument);
}

TEST(SylvesterTest, Examples) {
  EXPECT_EQ(sylvester_resultant(binary({1, 0, 0}), binary({0, 0, 1})), Rational(1));
  EXPECT_EQ(sylvester_resultant(binary({1, 0, 2}), binary({0, 1, 0})), Rational(2));
  EXPECT_EQ(sylvester_resultant(binary({1, 0, 8}), binary({0, 1, 0})), Rational(8));
  EXPECT_THROW(sylvester_resultant(binary({1, 0, 8}), binary({0, 1})), InvalidArgument);
}

TEST(SylvesterTest, MatchesCofactorOracle) {
  for (int trial = 0; trial < 40; ++trial) {
    const auto phi = testing::random_model(1, 1 + trial % 3, 5);
    const auto m = sylvester_matrix(phi.form(0), phi.form(1));
    EXPECT_EQ(sylvester_resultant(phi.form(0), phi.form(1)), cofactor_determinant(m));
  }
}

TEST(SylvesterTest, MultiplicativeInFirstArgument) {
  for (int trial = 0; trial < 50; ++trial) {
    const long a1 = testing::uniform(-4, 4), b1 = testing::uniform(-4, 4);
    const long a2 = testing::uniform(-4, 4), b2 = testing::uniform(-4, 4);
    if ((a1 == 0 && b1 == 0) || (a2 == 0 && b2 == 0)) continue;
    const auto g = binary({testing::uniform(-5, 5), testing::uniform(-5, 5), testing::uniform(-5, 5)});
    if (g.is_zero()) continue;
    const auto product = multiply_binary(binary({a1, b1}), binary({a2, b2}));
    EXPECT_EQ(sylvester_resultant(product, g), linear_resultant(a1, b1, g) * linear_resultant(a2, b2, g));
  }
}

TEST(MacaulayTest, LinearCaseIsDeterminant) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto phi = testing::random_model(2, 1, 6);
    DenseMatrix<Rational> a(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = phi.form(i)[j];
    }
    EXPECT_EQ(macaulay_resultant(phi).value, cofactor_determinant(a));
  }
}

TEST(MacaulayTest, PowersOfVariablesNormalized) {
  for (int n = 1; n <= 3; ++n) {
    for (int d = 1; d <= 3; ++d) {
      const auto& basis = MonomialBasis::get(n, d);
      std::vector<HomogeneousForm> forms;
      for (int i = 0; i <= n; ++i) {
        HomogeneousForm f(n, d);
        MultiIndex e(static_cast<std::size_t>(n) + 1, 0);
        e[static_cast<std::size_t>(i)] = d;
        f.set(e, Rational(1));
        forms.push_back(f);
      }
      (void)basis;
      EXPECT_EQ(macaulay_resultant(MorphismModel(forms)).value, Rational(1)) << n << "," << d;
    }
  }
}

TEST(MacaulayTest, MatrixShape) {
  const auto phi = testing::random_model(2, 2, 3);
  const auto mm = build_macaulay_matrix(phi);
  EXPECT_EQ(mm.critical_degree, 4);
  EXPECT_EQ(mm.matrix.rows(), binomial(6, 2));
  EXPECT_EQ(mm.matrix.rows(), mm.matrix.cols());
  // Monomials divisible by two of X^2, Y^2, Z^2 in degree 4: X2Y2, X2Z2, Y2Z2.
  EXPECT_EQ(mm.reduced_minor_index.size(), 3U);
}

TEST(MacaulayTest, AgreesWithSylvesterForBinaryForms) {
  for (int trial = 0; trial < 60; ++trial) {
    const auto phi = testing::random_model(1, 1 + trial % 4, 7);
    const auto res = macaulay_resultant(phi);
    EXPECT_EQ(res.method, ResultantMethod::sylvester);
    EXPECT_EQ(res.value, sylvester_resultant(phi.form(0), phi.form(1)));
    const auto quotient = macaulay_quotient(phi);
    if (quotient) EXPECT_EQ(*quotient, res.value);
  }
}

TEST(MacaulayTest, PerturbationAgreesWithQuotient) {
  int compared = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto phi = testing::random_model(2, 1 + trial % 2, 3);
    const auto quotient = macaulay_quotient(phi);
    if (!quotient) continue;
    EXPECT_EQ(perturbation_resultant(phi), *quotient);
    ++compared;
  }
  EXPECT_GT(compared, 20);
}

TEST(MacaulayTest, PerturbationFallbackWhenMinorVanishes) {
  // [Y^2 : Z^2 : X^2] puts no nonzero coefficient into M', so det M' = 0 while
  // Res = +-1 (a permutation of the power map).
  HomogeneousForm f0(2, 2), f1(2, 2), f2(2, 2);
  f0.set({0, 2, 0}, Rational(1));
  f1.set({0, 0, 2}, Rational(1));
  f2.set({2, 0, 0}, Rational(1));
  const MorphismModel phi({f0, f1, f2});
  EXPECT_FALSE(macaulay_quotient(phi).has_value());
  const auto res = macaulay_resultant(phi);
  EXPECT_EQ(res.method, ResultantMethod::perturbation);
  EXPECT_EQ(abs(res.value), Rational(1));
}

TEST(MacaulayTest, PerturbationDetectsVanishing) {
  HomogeneousForm f0(2, 2), f1(2, 2), f2(2, 2);
  f0.set({0, 1, 1}, Rational(1));
  f1.set({1, 0, 1}, Rational(1));
  f2.set({1, 1, 0}, Rational(1));
  EXPECT_TRUE(macaulay_resultant(MorphismModel({f0, f1, f2})).vanishes());
}

TEST(MacaulayTest, BackendsAgree) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = testing::random_model(2, 2, 4);
    EXPECT_EQ(macaulay_resultant(phi, DeterminantBackend::bareiss).value,
              macaulay_resultant(phi, DeterminantBackend::modular_crt).value);
  }
}

TEST(MacaulayTest, ScalingLaw) {
  const Rational lambdas[] = {Rational(2), Rational(-2), Rational(3), Rational(-3), Rational(Integer(1), Integer(2))};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    const int d = 1 + (trial / 2) % 3;
    const auto phi = testing::random_model(n, d, 4);
    const Rational& lambda = lambdas[trial % 5];
    long exponent = n + 1;
    for (int i = 0; i < n; ++i) exponent *= d;
    EXPECT_EQ(macaulay_resultant(phi.scaled(lambda)).value, pow(lambda, exponent) * macaulay_resultant(phi).value);
  }
}

TEST(MacaulayTest, CommonZeroVanishesAndPerturbationDoesNot) {
  EXPECT_TRUE(macaulay_resultant(quadratic(0, 1, 0, 0, 0, 1)).vanishes());
  int nonzero = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // Forms without an X^d term all vanish at [1:0:...:0].
    const int n = 1 + trial % 2;
    auto phi = testing::random_model(n, 2, 3);
    std::vector<HomogeneousForm> forms = phi.forms();
    for (auto& f : forms) f[0] = Rational(0);
    bool all_zero = true;
    for (const auto& f : forms) all_zero = all_zero && f.is_zero();
    if (all_zero) continue;
    EXPECT_TRUE(macaulay_resultant(MorphismModel(forms)).vanishes());
    forms[0][0] = Rational(testing::uniform(1, 5));
    if (!macaulay_resultant(MorphismModel(forms)).vanishes()) ++nonzero;
  }
  EXPECT_GT(nonzero, 10);
}

TEST(MacaulayTest, IntegralModelsHaveIntegerResultants) {
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_TRUE(macaulay_resultant(testing::random_model(2, 2, 3)).value.is_integer());
  }
}

}  // namespace
}  // namespace resdyn
