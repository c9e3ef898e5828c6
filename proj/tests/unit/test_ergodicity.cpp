#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "qergo/channel.hpp"
#include "qergo/ergodicity.hpp"
#include "qergo/errors.hpp"

using namespace qergo;

namespace {

Channel from_kraus(std::vector<ComplexMatrix> kraus) {
  return Channel::from_superoperator(testgen::superop_from_kraus(kraus));
}

ComplexMatrix ket_bra(Index d, Index i, Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

Channel flip_dephase() { return from_kraus({ket_bra(2, 1, 0), ket_bra(2, 0, 1)}); }
Channel dephasing() { return from_kraus({ket_bra(2, 0, 0), ket_bra(2, 1, 1)}); }

Channel amplitude_damping(double gamma) {
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2), a1 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  a1(0, 1) = std::sqrt(gamma);
  return from_kraus({a0, a1});
}

// rho -> Tr(rho) tau.
Channel replacement(const ComplexMatrix& tau) {
  const Index d = tau.rows();
  std::vector<ComplexMatrix> kraus;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(tau);
  for (Index k = 0; k < d; ++k)
    for (Index j = 0; j < d; ++j)
      kraus.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k))) * es.eigenvectors().col(k) *
                      ComplexVector::Unit(d, j).transpose());
  return from_kraus(kraus);
}

}  // namespace

TEST(Spectrum, OrderingBreaksTiesByRealThenImaginaryPart) {
  const Spectrum sp = order_spectrum({Complex(0, -1), 0.5, Complex(0, 1), 1.0, -1.0});
  ASSERT_EQ(sp.values.size(), 5u);
  EXPECT_EQ(sp.values[0], Complex(1.0, 0.0));
  EXPECT_EQ(sp.values[1], Complex(0.0, 1.0));
  EXPECT_EQ(sp.values[2], Complex(0.0, -1.0));
  EXPECT_EQ(sp.values[3], Complex(-1.0, 0.0));
  EXPECT_EQ(sp.values[4], Complex(0.5, 0.0));
  EXPECT_DOUBLE_EQ(sp.lambda1_abs(), 1.0);
  EXPECT_DOUBLE_EQ(sp.gap(), 0.0);
}

TEST(Spectrum, OrderingTreatsRoundoffMagnitudesAsTies) {
  // |a| and |b| differ by less than the 1e-12 quantum, so the real part decides.
  const Spectrum sp = order_spectrum({Complex(0.6, 0.8 + 1e-15), Complex(0.8, 0.6)});
  EXPECT_EQ(sp.values[0], Complex(0.8, 0.6));
}

TEST(Classify, FlipDephaseIsErgodicNotMixing) {
  const Channel ch = flip_dephase();
  const Spectrum sp = spectrum(ch);
  EXPECT_LT(testgen::multiset_gap(sp.values, {1.0, -1.0, 0.0, 0.0}), 1e-12);
  const ErgodicVerdict v = classify(ch, sp);
  EXPECT_EQ(v.label, ErgodicClass::ErgodicNotMixing);
  EXPECT_TRUE(v.ergodic());
  EXPECT_FALSE(v.mixing());
  EXPECT_EQ(v.unit_count, 1u);
  EXPECT_EQ(v.peripheral_count, 2u);
  ASSERT_EQ(v.fixed_points.size(), 1u);
}

TEST(Classify, IdentityIsIntegrableAndDephasingIsNonErgodic) {
  const ErgodicVerdict id = classify(spectrum(Channel::identity(2)));
  EXPECT_EQ(id.label, ErgodicClass::Integrable);
  EXPECT_FALSE(id.ergodic());

  const Channel deph = dephasing();
  const ErgodicVerdict v = classify(deph, spectrum(deph));
  EXPECT_EQ(v.label, ErgodicClass::NonErgodic);
  EXPECT_EQ(v.unit_count, 2u);
  ASSERT_EQ(v.fixed_points.size(), 2u);
  // The fixed space is spanned by the diagonal matrices.
  for (const auto& f : v.fixed_points) {
    EXPECT_LT(std::abs(f(0, 1)) + std::abs(f(1, 0)), 1e-10);
    EXPECT_LT((apply_to_operator(deph, f) - f).norm(), 1e-10);
  }
}

TEST(Classify, ReplacementChannelIsMixing) {
  testgen::Rng rng(1);
  const ComplexMatrix tau = testgen::random_state(3, rng);
  const Channel ch = replacement(tau);
  const Spectrum sp = spectrum(ch);
  const ErgodicVerdict v = classify(ch, sp);
  EXPECT_EQ(v.label, ErgodicClass::Mixing);
  EXPECT_NEAR(sp.gap(), 1.0, 1e-10);
  EXPECT_NEAR(mean_abs_indicator(sp), 1.0, 1e-10);
  const FixedPoint fp = fixed_point(ch, sp);
  EXPECT_LT((fp.state.matrix() - tau).norm(), 1e-10);
  EXPECT_LT(fp.residual, 1e-10);
}

TEST(Classify, EpsilonMustLieInOpenInterval) {
  const Spectrum sp = spectrum(Channel::identity(2));
  EXPECT_THROW(classify(sp, 0.0), ValidationError);
  EXPECT_THROW(classify(sp, 0.1), ValidationError);
  EXPECT_THROW(classify(sp, -1e-3), ValidationError);
  EXPECT_NO_THROW(classify(sp, 0.05));
}

TEST(Classify, EpsilonControlsNearUnitEigenvalues) {
  // Amplitude damping with tiny gamma has |lambda_1| = sqrt(1 - gamma).
  const Channel ch = amplitude_damping(1e-6);
  const Spectrum sp = spectrum(ch);
  EXPECT_EQ(classify(sp, 1e-8).label, ErgodicClass::Mixing);
  EXPECT_EQ(classify(sp, 1e-2).label, ErgodicClass::Integrable);
}

TEST(FixedPoint, AmplitudeDampingRelaxesToGroundState) {
  const Channel ch = amplitude_damping(0.3);
  const FixedPoint fp = fixed_point(ch);
  EXPECT_NEAR(fp.state.matrix()(0, 0).real(), 1.0, 1e-12);
  EXPECT_LT(fp.residual, 1e-12);
}

TEST(FixedPoint, DegenerateFixedSpaceThrows) {
  try {
    fixed_point(dephasing());
    FAIL() << "expected NonUniqueFixedPointError";
  } catch (const NonUniqueFixedPointError& e) {
    EXPECT_EQ(e.dimension(), 2u);
  }
  EXPECT_THROW(fixed_point(Channel::identity(3)), NonUniqueFixedPointError);
}

TEST(Iterate, AmplitudeDampingClosedForm) {
  const double gamma = 0.2;
  const Channel ch = amplitude_damping(gamma);
  const DensityMatrix excited(ComplexMatrix(ket_bra(2, 1, 1)));
  const auto deltas = iterate_convergence(ch, excited, 25);
  ASSERT_EQ(deltas.size(), 26u);
  for (int n = 0; n <= 25; ++n) {
    // Population (1 - gamma)^n left in |1>, so the trace distance is twice that.
    EXPECT_NEAR(deltas[static_cast<std::size_t>(n)], 2.0 * std::pow(1.0 - gamma, n), 1e-12) << n;
  }
}

TEST(Iterate, FlipDephaseDoesNotConverge) {
  ComplexMatrix r(2, 2);
  r << 0.8, 0.1, 0.1, 0.2;
  const DensityMatrix rho(r);
  const auto deltas = iterate_convergence(flip_dephase(), rho, 10);
  for (std::size_t n = 1; n < deltas.size(); ++n) EXPECT_NEAR(deltas[n], 0.6, 1e-12);
  EXPECT_THROW(iterate_convergence(flip_dephase(), rho, -1), ValidationError);
  EXPECT_THROW(iterate_convergence(dephasing(), rho, 3), NonUniqueFixedPointError);
}

TEST(Cesaro, FlipDephaseAverageConvergesToMaximallyMixed) {
  ComplexMatrix r(2, 2);
  r << 0.9, 0.2, 0.2, 0.1;
  const Channel avg = cesaro_average(flip_dephase(), 99);
  const ComplexMatrix out = apply_to_operator(avg, r);
  EXPECT_NEAR(trace_norm(out - ComplexMatrix::Identity(2, 2) / 2.0), 0.0, 0.03);
  const ComplexMatrix out_even = apply_to_operator(cesaro_average(flip_dephase(), 100), r);
  // 101 terms: rho itself, then 50 flipped and 50 unflipped diagonal states.
  EXPECT_NEAR(trace_norm(out_even - ComplexMatrix::Identity(2, 2) / 2.0),
              2.0 * std::sqrt(0.4 * 0.4 + 0.2 * 0.2) / 101.0, 1e-12);
  EXPECT_THROW(cesaro_average(flip_dephase(), -1), ValidationError);
}

TEST(FormFactor, RoutesAgreeAndMatchKnownCases) {
  testgen::Rng rng(2);
  const Channel random = from_kraus(testgen::random_kraus(3, 2, rng));
  const FormFactor ff = generalized_sff(random, 20);
  ASSERT_EQ(ff.k.size(), 20u);
  EXPECT_LT(ff.max_discrepancy, 1e-9);
  for (std::size_t n = 0; n < 20; ++n) EXPECT_NEAR(ff.via_trace[n].imag(), 0.0, 1e-12);

  const FormFactor id = generalized_sff(Channel::identity(2), 5);
  for (double k : id.k) EXPECT_NEAR(k, 1.0, 1e-12);

  const FormFactor rep = generalized_sff(replacement(testgen::random_state(2, rng)), 5);
  for (double k : rep.k) EXPECT_NEAR(k, 0.25, 1e-10);

  const FormFactor flip = generalized_sff(flip_dephase(), 4);
  EXPECT_NEAR(flip.k[0], 0.0, 1e-12);
  EXPECT_NEAR(flip.k[1], 0.5, 1e-12);
  EXPECT_THROW(generalized_sff(flip_dephase(), 0), ValidationError);
}

TEST(FormFactor, ScramblingTime) {
  const std::vector<double> k{0.9, 0.4, 0.2, 0.3};
  EXPECT_EQ(scrambling_time(k, 4), 3);
  EXPECT_EQ(scrambling_time(k, 2), 2);
  EXPECT_EQ(scrambling_time(k, 100), std::nullopt);
  const std::vector<double> at{0.25};
  EXPECT_EQ(scrambling_time(at, 4), 1);
}

TEST(Spectrum, MultisetDistance) {
  const std::vector<Complex> a{1.0, Complex(0, 1), 0.5};
  const std::vector<Complex> b{0.5, 1.0, Complex(0, 1.001)};
  EXPECT_NEAR(multiset_distance(a, b), 0.001, 1e-12);
  const std::vector<Complex> c{1.0, 1.0};
  EXPECT_TRUE(std::isinf(multiset_distance(a, c)));
}

TEST(SpectrumProperty, RandomChannelsObeySpectralTheorem) {
  testgen::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 3;
    const Channel ch = from_kraus(testgen::random_kraus(d, 1 + trial % 4, rng));
    const Spectrum sp = spectrum(ch);
    ASSERT_EQ(sp.values.size(), static_cast<std::size_t>(d * d));
    EXPECT_LT(std::abs(sp.values[0] - 1.0), 1e-9);
    for (const auto& l : sp.values) EXPECT_LE(std::abs(l), 1.0 + 1e-9);
    std::vector<Complex> conj;
    for (const auto& l : sp.values) conj.push_back(std::conj(l));
    EXPECT_LT(testgen::multiset_gap(sp.values, conj), 1e-9);
  }
}
