#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "qergo/entanglement.hpp"
#include "qergo/ergodicity.hpp"
#include "qergo/errors.hpp"
#include "qergo/manybody.hpp"

using namespace qergo;

namespace {

// Single-site operator placed at `site` of an L-site chain (site 0 leftmost).
ComplexMatrix on_site(const ComplexMatrix& op, int site, int n_sites) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int j = 0; j < n_sites; ++j) out = testgen::kron(out, j == site ? op : ComplexMatrix::Identity(2, 2));
  return out;
}

// H_SR written in spin language: hopping becomes sigma+ sigma- + h.c. with no
// string because the strings of neighbouring sites cancel.
ComplexMatrix spin_chain_oracle(int n, double v, double h, double alpha) {
  ComplexMatrix raise = ComplexMatrix::Zero(2, 2), lower = ComplexMatrix::Zero(2, 2),
                number = ComplexMatrix::Zero(2, 2);
  raise(1, 0) = 1.0;
  lower(0, 1) = 1.0;
  number(1, 1) = 1.0;
  const Index dim = Index{1} << n;
  ComplexMatrix hm = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i + 1 < n; ++i) {
    hm -= on_site(raise, i, n) * on_site(lower, i + 1, n) + on_site(lower, i, n) * on_site(raise, i + 1, n);
    hm += v * on_site(number, i, n) * on_site(number, i + 1, n);
  }
  for (int i = 0; i < n; ++i) hm += h * std::cos(2.0 * std::numbers::pi * alpha * (i + 1)) * on_site(number, i, n);
  return hm;
}

ManyBodySpec sr(int n, double h) {
  ManyBodySpec s;
  s.model = Model::SR;
  s.n_sites = n;
  s.h = h;
  return s;
}

ManyBodySpec syk(int n, std::uint64_t seed, int realizations = 1) {
  ManyBodySpec s;
  s.model = Model::SYK;
  s.n_sites = n;
  s.seed = seed;
  s.realizations = realizations;
  return s;
}

}  // namespace

TEST(Spec, Validation) {
  EXPECT_NO_THROW(sr(8, 1.0).validate());
  EXPECT_THROW(sr(7, 1.0).validate(), ValidationError);
  EXPECT_THROW(sr(0, 1.0).validate(), ValidationError);
  EXPECT_THROW(sr(14, 1.0).validate(), ValidationError);
  ManyBodySpec big = sr(14, 1.0);
  big.max_sites = 14;
  EXPECT_NO_THROW(big.validate());
  ManyBodySpec bad = sr(4, std::nan(""));
  EXPECT_THROW(bad.validate(), ValidationError);
  ManyBodySpec none = syk(4, 0, 0);
  EXPECT_THROW(none.validate(), ValidationError);
  EXPECT_EQ(sr(8, 0).system_dim(), 16);
  EXPECT_EQ(sr(2, 0).system_dim(), 2);
}

TEST(Spec, SykVarianceConventions) {
  ManyBodySpec s = syk(8, 0);
  EXPECT_DOUBLE_EQ(s.syk_coupling_variance(), 1.0 / 64.0);
  s.normalization = SykNormalization::FullChain;
  EXPECT_DOUBLE_EQ(s.syk_coupling_variance(), 1.0 / 512.0);
  EXPECT_EQ(parse_syk_normalization("full-chain"), SykNormalization::FullChain);
  EXPECT_THROW(parse_syk_normalization("other"), ValidationError);
  EXPECT_EQ(parse_model("syk"), Model::SYK);
  EXPECT_THROW(parse_model("xxz"), ValidationError);
}

TEST(Fock, CanonicalAnticommutationRelations) {
  const auto ops = build_fock_operators(4);
  const Index dim = 16;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const ComplexMatrix& ci = ops.annihilation[static_cast<std::size_t>(i)];
      const ComplexMatrix& cj = ops.annihilation[static_cast<std::size_t>(j)];
      const ComplexMatrix acomm = ci * cj.adjoint() + cj.adjoint() * ci;
      const ComplexMatrix expected = (i == j ? 1.0 : 0.0) * ComplexMatrix::Identity(dim, dim);
      EXPECT_LT((acomm - expected).norm(), 1e-14);
      EXPECT_LT((ci * cj + cj * ci).norm(), 1e-14);
    }
  }
  EXPECT_THROW(build_fock_operators(0), ValidationError);
}

TEST(Fock, BasisStateZeroIsVacuum) {
  const auto ops = build_fock_operators(3);
  EXPECT_NEAR(ops.total_number()(0, 0).real(), 0.0, 1e-15);
  EXPECT_NEAR(ops.total_number()(7, 7).real(), 3.0, 1e-15);
  // Site 0 is the most significant bit.
  EXPECT_NEAR(ops.number(0)(4, 4).real(), 1.0, 1e-15);
  EXPECT_NEAR(ops.number(2)(1, 1).real(), 1.0, 1e-15);
}

TEST(HamiltonianSr, MatchesSpinChainOracle) {
  for (int n : {2, 4, 6}) {
    ManyBodySpec s = sr(n, 2.3);
    s.V = 0.7;
    EXPECT_LT((build_h_sr(s) - spin_chain_oracle(n, 0.7, 2.3, s.alpha)).norm(), 1e-12) << n;
  }
}

TEST(HamiltonianSr, MatchesDenseFermionOperators) {
  const ManyBodySpec s = sr(4, 1.7);
  const auto ops = build_fock_operators(4);
  ComplexMatrix h = ComplexMatrix::Zero(16, 16);
  for (int i = 0; i + 1 < 4; ++i) {
    const ComplexMatrix hop = ops.creation(i) * ops.annihilation[static_cast<std::size_t>(i + 1)];
    h -= hop + hop.adjoint();
    h += s.V * ops.number(i) * ops.number(i + 1);
  }
  for (int i = 0; i < 4; ++i) h += s.h * std::cos(2 * std::numbers::pi * s.alpha * (i + 1)) * ops.number(i);
  EXPECT_LT((build_h_sr(s) - h).norm(), 1e-12);
}

TEST(HamiltonianSyk, MatchesDenseJordanWignerProducts) {
  const ManyBodySpec s = syk(4, 9);
  Rng rng(s.seed);
  const SykCouplings j(4, s.syk_coupling_variance(), rng);
  const auto ops = build_fock_operators(4);
  ComplexMatrix h = ComplexMatrix::Zero(16, 16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          h += j(a, b, c, d) * ops.creation(a) * ops.creation(b) *
               ops.annihilation[static_cast<std::size_t>(c)] * ops.annihilation[static_cast<std::size_t>(d)];
  EXPECT_LT((build_h_syk(s, 0) - h).norm(), 1e-12);
}

TEST(HamiltonianSyk, CouplingSymmetries) {
  Rng rng(3);
  const SykCouplings j(6, 0.1, rng);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        for (int d = 0; d < 6; ++d) {
          EXPECT_EQ(j(a, b, c, d), -j(b, a, c, d));
          EXPECT_EQ(j(a, b, c, d), -j(a, b, d, c));
          EXPECT_EQ(j(c, d, a, b), std::conj(j(a, b, c, d)));
        }
  EXPECT_EQ(j(2, 2, 0, 1), Complex(0.0));
}

TEST(HamiltonianSyk, SampledVarianceWithinTenPercent) {
  const double variance = 1.0 / 512.0;
  Rng rng(5);
  double sum = 0.0;
  int count = 0;
  while (count < 20000) {
    const SykCouplings j(8, variance, rng);
    for (int a = 0; a < 8; ++a)
      for (int b = a + 1; b < 8; ++b)
        for (int c = 0; c < 8; ++c)
          for (int d = c + 1; d < 8; ++d)
            if (a * 8 + b <= c * 8 + d) {
              sum += std::norm(j(a, b, c, d));
              ++count;
            }
  }
  EXPECT_NEAR(sum / count, variance, 0.1 * variance);
}

TEST(HamiltonianSyk, HermitianNumberConservingAndSeeded) {
  const ManyBodySpec s = syk(6, 21);
  const ComplexMatrix h = build_h_syk(s, 0);
  EXPECT_LT(hermiticity_defect(h), 1e-13);
  const ComplexMatrix n = build_fock_operators(6).total_number();
  EXPECT_LT((h * n - n * h).norm(), 1e-12);
  EXPECT_EQ(build_h_syk(s, 0), h);
  EXPECT_GT((build_h_syk(s, 1) - h).norm(), 1e-3);
  ManyBodySpec shifted = s;
  shifted.seed = 22;
  EXPECT_EQ(build_h_syk(shifted, 0), build_h_syk(s, 1));
  EXPECT_THROW(build_h_syk(s, -1), ValidationError);
}

TEST(HamiltonianSr, ConservesParticleNumber) {
  const ComplexMatrix h = build_h_sr(sr(6, 3.0));
  const ComplexMatrix n = build_fock_operators(6).total_number();
  EXPECT_LT((h * n - n * h).norm(), 1e-12);
  EXPECT_LT(hermiticity_defect(h), 1e-14);
}

TEST(Channel, DirectFormulaMatchesGeneralDilation) {
  const ManyBodyChannel mb = manybody_channel(sr(4, 1.5), 0);
  const Channel general = channel_from_unitary(mb.unitary, DensityMatrix::maximally_mixed(4));
  EXPECT_LT((mb.channel.superoperator() - general.superoperator()).norm(), 1e-12);
  EXPECT_TRUE(verify_cptp(mb.channel).ok());
  EXPECT_LT((mb.unitary - matrix_exponential_i(build_h_sr(sr(4, 1.5)), +1)).norm(), 1e-14);
}

TEST(Neel, OccupiesOddSitesOfTheSystem) {
  const DensityMatrix two = neel_state(2);
  EXPECT_NEAR(two.matrix()(2, 2).real(), 1.0, 1e-15);  // occupation (1, 0)
  for (int l : {1, 2, 3, 4}) {
    const DensityMatrix rho = neel_state(l);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
    const ComplexMatrix n = build_fock_operators(l).total_number();
    EXPECT_NEAR((rho.matrix() * n).trace().real(), (l + 1) / 2, 1e-14);
  }
}

TEST(ManyBodyProperty, MixingAndUnitalAcrossModels) {
  for (int n : {4, 6, 8}) {
    for (double h : {0.0, 1.0, 5.0, 10.0}) {
      if (n == 8 && h != 10.0 && h != 1.0) continue;
      const ManyBodyChannel mb = manybody_channel(sr(n, h), 0);
      const Spectrum sp = spectrum(mb.channel);
      EXPECT_EQ(classify(sp, kTolerances.classify_manybody).label, ErgodicClass::Mixing)
          << "L=" << n << " h=" << h;
      const FixedPoint fp = fixed_point(mb.channel, sp, kTolerances.classify_manybody);
      const Index d = mb.channel.dim();
      EXPECT_LT((fp.state.matrix() - ComplexMatrix::Identity(d, d) / static_cast<double>(d)).norm(), 1e-8);
      EXPECT_LT(operator_entanglement(mb.unitary), mixing_threshold(d)) << "L=" << n << " h=" << h;
    }
  }
}

TEST(ManyBodyProperty, SmallestSrChainExceedsThresholdForWeakPotential) {
  bool exceeded = false;
  for (double h = 0.0; h <= 3.0; h += 0.25) {
    const ManyBodyChannel mb = manybody_channel(sr(2, h), 0);
    exceeded = exceeded || operator_entanglement(mb.unitary) > mixing_threshold(2);
  }
  EXPECT_TRUE(exceeded);
}

TEST(ManyBodyProperty, SrDeltaDecays) {
  const ManyBodyChannel mb = manybody_channel(sr(8, 1.0), 0);
  const auto deltas = iterate_convergence(mb.channel, neel_state(4), 20, kTolerances.classify_manybody);
  EXPECT_LT(deltas[20], deltas[0] / 10.0);
}

TEST(ManyBodyProperty, SykDecaysFasterThanSr) {
  const ManyBodyChannel sr_ch = manybody_channel(sr(8, 1.0), 0);
  const auto sr_delta = iterate_convergence(sr_ch.channel, neel_state(4), 15, kTolerances.classify_manybody);
  for (int r = 0; r < 3; ++r) {
    const ManyBodyChannel syk_ch = manybody_channel(syk(8, 7), r);
    const auto syk_delta =
        iterate_convergence(syk_ch.channel, neel_state(4), 15, kTolerances.classify_manybody);
    for (std::size_t n = 2; n < sr_delta.size(); ++n) EXPECT_LE(syk_delta[n], sr_delta[n]) << "n=" << n;
  }
}
