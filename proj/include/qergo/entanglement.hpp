#pragma once

#include <vector>

#include "qergo/channel.hpp"
#include "qergo/ergodicity.hpp"
#include "qergo/tensor.hpp"

namespace qergo {

// U = sum_i sqrt(mu_i) A_i (x) B_i with Tr(A_i A_j^dagger) = Tr(B_i B_j^dagger) = delta_ij.
struct OperatorSchmidt {
  std::vector<double> coefficients;  // mu_i, descending, sum = d^2
  std::vector<ComplexMatrix> left_ops;
  std::vector<ComplexMatrix> right_ops;

  ComplexMatrix reconstruct() const;
};

OperatorSchmidt operator_schmidt(const ComplexMatrix& u);

// Normalized operator entanglement
//   E(U) = d^2/(d^2-1) * (1 - Tr[(U^{R2} U^{R2 dagger})^2] / d^4),
// evaluated from one product and a Frobenius norm.
double operator_entanglement(const ComplexMatrix& u);
double operator_entanglement(const OperatorSchmidt& schmidt);

// E* = (d^2 - 2) / (d^2 - 1); E(U) > E* guarantees |lambda_1| < 1 at sigma = I/d.
double mixing_threshold(Index d);

struct SufficiencyVerdict {
  bool sufficient = false;
  // E(U) for a maximally mixed environment, otherwise
  // Tr[(U^{R2} (I (x) sigma) U^{R2 dagger})^2].
  double witness = 0.0;
  bool maximally_mixed_environment = false;
};

// Sufficient condition only: a false verdict says nothing about mixing.
SufficiencyVerdict sufficiency_verdict(const ComplexMatrix& u, const DensityMatrix& sigma);

struct SpectralSumBounds {
  double sum_sq = 0.0;          // sum_{i>=1} |lambda_i|^2
  double bound = 0.0;           // (d^2 - 1)(1 - E)
  double lambda1_abs = 0.0;
  double lambda1_bound = 0.0;   // sqrt((d^2 - 1)(1 - E))
  double lambda_min_abs = 0.0;  // |lambda_{d^2-1}|
  double lambda_min_bound = 0.0;// sqrt(1 - E)

  bool holds(double tol) const {
    return sum_sq <= bound + tol && lambda1_abs <= lambda1_bound + tol &&
           lambda_min_abs <= lambda_min_bound + tol;
  }
};

// sp must be the spectrum of a channel dilated with sigma = I/d and e its E(U).
SpectralSumBounds spectral_sum_bounds(const Spectrum& sp, double e, Index d);
SpectralSumBounds spectral_sum_bounds(const Channel& ch, double e);

bool is_dual_unitary(const ComplexMatrix& u, double tol = kTolerances.dual_unitary);

struct PurityCheck {
  double purity = 0.0;
  double threshold = 0.0;  // 2 / d
  bool sufficient = false;
};

// Throws InapplicableError when U is not dual-unitary.
PurityCheck dual_unitary_purity_check(const ComplexMatrix& u, const DensityMatrix& sigma);

struct LuOrbitReport {
  double entanglement_before = 0.0;
  double entanglement_after = 0.0;
  double superop_norm_before = 0.0;
  double superop_norm_after = 0.0;

  double entanglement_change() const { return std::abs(entanglement_after - entanglement_before); }
  double norm_change() const { return std::abs(superop_norm_after - superop_norm_before); }
};

// Compares U with U' = (u1 (x) u2) U (u3 (x) u4). The two channels' spectra
// are in general different; only E and ||L||_F are invariants. The dressed
// channel is built with environment u4^dagger sigma u4, which is sigma
// itself when sigma = I/d.
LuOrbitReport lu_orbit_check(const ComplexMatrix& u, const ComplexMatrix& u1,
                             const ComplexMatrix& u2, const ComplexMatrix& u3,
                             const ComplexMatrix& u4, const DensityMatrix& sigma);

}  // namespace qergo
