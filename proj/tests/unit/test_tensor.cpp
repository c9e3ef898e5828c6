#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "qergo/errors.hpp"
#include "qergo/tensor.hpp"

using namespace qergo;

namespace {

constexpr double kTight = 1e-12;

}  // namespace

TEST(Tensor, VectorizeIsRowMajor) {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = vectorize(a);
  ASSERT_EQ(v.size(), 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(v(i * 2 + j), a(i, j));
  EXPECT_EQ(unvectorize(v), a);
}

TEST(Tensor, UnvectorizeRejectsNonSquareLength) {
  EXPECT_THROW(unvectorize(ComplexVector::Zero(5)), DimensionError);
}

TEST(Tensor, ReshuffleHandIndexMap) {
  // Entry value encodes its own (row, col) so the permutation is visible.
  ComplexMatrix a(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = Complex(10 * r + c, 0);
  const ComplexMatrix b = reshuffle_r2(a);
  // out[(i,j),(a,b)] = in[(i,a),(j,b)] spelled out for d = 2.
  EXPECT_EQ(b(0, 0), a(0, 0));
  EXPECT_EQ(b(0, 1), a(0, 1));
  EXPECT_EQ(b(0, 2), a(1, 0));
  EXPECT_EQ(b(0, 3), a(1, 1));
  EXPECT_EQ(b(1, 0), a(0, 2));
  EXPECT_EQ(b(1, 3), a(1, 3));
  EXPECT_EQ(b(2, 0), a(2, 0));
  EXPECT_EQ(b(2, 1), a(2, 1));
  EXPECT_EQ(b(3, 0), a(2, 2));
  EXPECT_EQ(b(3, 3), a(3, 3));
  EXPECT_EQ(b(1, 2), a(1, 2));
  EXPECT_EQ(b(2, 3), a(3, 1));
}

TEST(Tensor, ReshuffleMatchesLoopOracleAndIsInvolution) {
  testgen::Rng rng(11);
  for (Index d : {2, 3, 4}) {
    const ComplexMatrix a = testgen::ginibre(d * d, d * d, rng);
    const ComplexMatrix r = reshuffle_r2(a);
    EXPECT_LT((r - testgen::reshuffle(a, d)).norm(), kTight);
    EXPECT_LT((reshuffle_r2(r) - a).norm(), kTight);
  }
}

TEST(Tensor, ReshuffleOfProductIsOuterProductOfVectors) {
  testgen::Rng rng(12);
  const Index d = 3;
  const ComplexMatrix a = testgen::ginibre(d, d, rng);
  const ComplexMatrix b = testgen::ginibre(d, d, rng);
  // (A (x) B)^{R2} = |A><B*|
  const ComplexMatrix expected = vectorize(a) * vectorize(b.conjugate()).adjoint();
  EXPECT_LT((reshuffle_r2(kron(a, b)) - expected).norm(), kTight);
}

TEST(Tensor, ReshuffleRejectsNonSquareDimension) {
  EXPECT_THROW(reshuffle_r2(ComplexMatrix::Zero(6, 6)), DimensionError);
  EXPECT_THROW(reshuffle_r2(ComplexMatrix::Zero(4, 6)), DimensionError);
}

TEST(Tensor, KronMatchesOracle) {
  testgen::Rng rng(13);
  const ComplexMatrix a = testgen::ginibre(2, 3, rng);
  const ComplexMatrix b = testgen::ginibre(3, 2, rng);
  EXPECT_LT((kron(a, b) - testgen::kron(a, b)).norm(), kTight);
}

TEST(Tensor, TraceIsMultiplicativeAndPartialTracesFactor) {
  testgen::Rng rng(14);
  const ComplexMatrix a = testgen::ginibre(2, 2, rng);
  const ComplexMatrix b = testgen::ginibre(3, 3, rng);
  const ComplexMatrix ab = kron(a, b);
  EXPECT_LT(std::abs(ab.trace() - a.trace() * b.trace()), kTight);
  const BipartiteIndex idx{2, 3};
  EXPECT_LT((partial_trace(ab, idx, Subsystem::First) - a * b.trace()).norm(), kTight);
  EXPECT_LT((partial_trace(ab, idx, Subsystem::Second) - b * a.trace()).norm(), kTight);
}

TEST(Tensor, PartialTraceRejectsWrongShape) {
  EXPECT_THROW(partial_trace(ComplexMatrix::Zero(5, 5), {2, 3}, Subsystem::First), DimensionError);
}

TEST(Tensor, ExactSqrt) {
  EXPECT_EQ(exact_sqrt(16), 4);
  EXPECT_EQ(exact_sqrt(1), 1);
  EXPECT_EQ(exact_sqrt(15), -1);
  EXPECT_EQ(square_bipartition(ComplexMatrix::Zero(9, 9)).d1, 3);
  EXPECT_THROW(square_bipartition(ComplexMatrix::Zero(8, 8)), DimensionError);
}

TEST(Tensor, EigGeneralOnTriangularMatrix) {
  ComplexMatrix t(3, 3);
  t << 1.0, 5.0, 7.0, 0.0, Complex(0, 2), 3.0, 0.0, 0.0, -0.5;
  const auto ev = eig_general(t);
  EXPECT_LT(testgen::multiset_gap(ev, {1.0, Complex(0, 2), -0.5}), 1e-12);
}

TEST(Tensor, EigenvaluesInvariantUnderSimilarity) {
  testgen::Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = testgen::ginibre(6, 6, rng);
    ComplexMatrix s = testgen::ginibre(6, 6, rng) + 6.0 * ComplexMatrix::Identity(6, 6);
    const ComplexMatrix b = s * a * s.inverse();
    EXPECT_LT(testgen::multiset_gap(eig_general(a), eig_general(b)), 1e-9);
  }
}

TEST(Tensor, EigGeneralRejectsNonFiniteInput) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(eig_general(a), NumericalError);
}

TEST(Tensor, EigHermitianAscendingAndRejectsNonHermitian) {
  testgen::Rng rng(16);
  const ComplexMatrix h = testgen::random_hermitian(5, rng);
  const HermitianEigen e = eig_hermitian(h);
  for (Index i = 1; i < 5; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  EXPECT_LT((e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - h).norm(),
            1e-10);
  ComplexMatrix bad = h;
  bad(0, 1) += 0.5;
  EXPECT_THROW(eig_hermitian(bad), ValidationError);
}

TEST(Tensor, NormOrdering) {
  testgen::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = testgen::ginibre(5, 5, rng);
    EXPECT_GE(trace_norm(a) + 1e-12, frobenius_norm(a));
    EXPECT_GE(frobenius_norm(a) + 1e-12, spectral_radius(a));
  }
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag.diagonal() << 1.0, -2.0, Complex(0, 3);
  EXPECT_NEAR(trace_norm(diag), 6.0, 1e-12);
  EXPECT_NEAR(frobenius_norm(diag), std::sqrt(14.0), 1e-12);
  EXPECT_NEAR(spectral_radius(diag), 3.0, 1e-12);
}

TEST(Tensor, ExponentialOfPauliX) {
  const ComplexMatrix x = testgen::pauli(1);
  const ComplexMatrix u = matrix_exponential_i(std::numbers::pi / 2.0 * x, +1);
  EXPECT_LT((u - Complex(0, 1) * x).norm(), 1e-12);
  const ComplexMatrix v = matrix_exponential_i(std::numbers::pi / 2.0 * x, -1);
  EXPECT_LT((v + Complex(0, 1) * x).norm(), 1e-12);
}

TEST(Tensor, ExponentialIsUnitaryAndMatchesSeries) {
  testgen::Rng rng(18);
  const ComplexMatrix h = testgen::random_hermitian(4, rng) * 0.1;
  const ComplexMatrix u = matrix_exponential_i(h);
  EXPECT_LT(unitarity_defect(u), 1e-12);
  // Truncated Taylor series of e^{iH} for small H.
  ComplexMatrix series = ComplexMatrix::Identity(4, 4);
  ComplexMatrix term = ComplexMatrix::Identity(4, 4);
  for (int k = 1; k < 30; ++k) {
    term = term * (Complex(0, 1) * h) / static_cast<double>(k);
    series += term;
  }
  EXPECT_LT((u - series).norm(), 1e-12);
}

TEST(Tensor, DefectsAndFiniteness) {
  EXPECT_EQ(unitarity_defect(ComplexMatrix::Identity(3, 3)), 0.0);
  EXPECT_GT(unitarity_defect(2.0 * ComplexMatrix::Identity(3, 3)), 1.0);
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_GT(hermiticity_defect(a), 0.0);
  EXPECT_TRUE(all_finite(a));
  a(1, 1) = INFINITY;
  EXPECT_FALSE(all_finite(a));
  EXPECT_THROW(require_square(ComplexMatrix::Zero(2, 3), "test"), DimensionError);
}
