#pragma once

#include <span>
#include <vector>

#include "qergo/tensor.hpp"

namespace qergo {

// Positive semidefinite, Hermitian, unit-trace matrix. Construction
// validates against kTolerances and throws ValidationError otherwise.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  static DensityMatrix maximally_mixed(Index d);
  // |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const ComplexVector& psi);

  Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }
  double purity() const;

 private:
  ComplexMatrix mat_;
};

// A quantum channel on a d-dimensional system, stored as its d^2 x d^2
// superoperator L acting on row-major vectorized states (|rho'> = L|rho>).
// Choi and Kraus forms are derived on request; a Channel never changes
// after construction.
class Channel {
 public:
  // Only checks that the shape is d^2 x d^2. Use verify_cptp for physics.
  static Channel from_superoperator(ComplexMatrix superop);
  static Channel identity(Index d);

  Index dim() const { return d_; }
  const ComplexMatrix& superoperator() const { return superop_; }
  // Dynamical matrix D = L^{R2}, Tr D = d.
  ComplexMatrix choi() const;

 private:
  Channel(Index d, ComplexMatrix superop) : d_(d), superop_(std::move(superop)) {}

  Index d_;
  ComplexMatrix superop_;
};

struct CptpReport {
  double choi_hermiticity_defect = 0.0;
  double min_choi_eigenvalue = 0.0;
  // ||sum_i A_i^dagger A_i - I||_F, i.e. ||Tr_1 D - I||_F.
  double trace_preservation_defect = 0.0;
  bool completely_positive = false;
  bool trace_preserving = false;

  bool ok() const { return completely_positive && trace_preserving; }
};

CptpReport verify_cptp(const Channel& ch);

// L = [U^{R2} (I (x) sigma) U^{R2 dagger}]^{R2}. Throws ValidationError if
// U is not unitary or the dimensions disagree.
Channel channel_from_unitary(const ComplexMatrix& u, const DensityMatrix& sigma);

DensityMatrix apply_superop(const Channel& ch, const DensityMatrix& rho);
// Same action on an arbitrary operator; no positivity check on the output.
ComplexMatrix apply_to_operator(const Channel& ch, const ComplexMatrix& x);

// Literal Tr_2[U (rho (x) sigma) U^dagger]. Kept independent of the
// superoperator path so the two can be checked against each other.
DensityMatrix brute_force_apply(const ComplexMatrix& u, const DensityMatrix& sigma,
                                const DensityMatrix& rho);

// Canonical Kraus operators A_i = sqrt(g_i) unvec(gamma_i) from the
// eigendecomposition of the Choi matrix.
std::vector<ComplexMatrix> kraus_from_choi(const Channel& ch);

Channel channel_from_kraus(std::span<const ComplexMatrix> kraus);
Channel adjoint_channel(const Channel& ch);
// (outer o inner)(rho) = outer(inner(rho)).
Channel compose(const Channel& outer, const Channel& inner);
Channel channel_power(const Channel& ch, int n);

}  // namespace qergo
