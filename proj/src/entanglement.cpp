#include "qergo/entanglement.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "qergo/errors.hpp"

namespace qergo {

namespace {

BipartiteIndex checked_unitary_bipartition(const ComplexMatrix& u, const char* what) {
  const auto idx = square_bipartition(u);
  const double defect = unitarity_defect(u);
  if (!(defect <= kTolerances.unitarity)) {
    throw ValidationError(std::string(what) + ": ||U U^dagger - I||_F = " +
                          std::to_string(defect));
  }
  return idx;
}

// U^{R2} U^{R2 dagger}; Hermitian PSD with trace d^2.
ComplexMatrix realigned_gram(const ComplexMatrix& u, BipartiteIndex idx) {
  const ComplexMatrix ur = reshuffle_r2(u, idx);
  return ur * ur.adjoint();
}

double entanglement_from_purity(double sum_mu_sq, Index d) {
  const double d2 = static_cast<double>(d * d);
  return d2 / (d2 - 1.0) * (1.0 - sum_mu_sq / (d2 * d2));
}

bool is_maximally_mixed(const DensityMatrix& sigma) {
  const auto d = sigma.dim();
  return (sigma.matrix() - identity(d) / static_cast<double>(d)).norm() <= 1e-12;
}

}  // namespace

ComplexMatrix OperatorSchmidt::reconstruct() const {
  if (coefficients.empty()) return {};
  const Index d = left_ops.front().rows();
  ComplexMatrix u = ComplexMatrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    u += std::sqrt(coefficients[i]) * kron(left_ops[i], right_ops[i]);
  return u;
}

OperatorSchmidt operator_schmidt(const ComplexMatrix& u) {
  const auto idx = checked_unitary_bipartition(u, "operator_schmidt");
  // U^{R2} = sum sqrt(mu) |A><B*|, so left singular vectors are |A_i> and
  // right singular vectors are |B_i*>.
  Eigen::JacobiSVD<ComplexMatrix> svd(reshuffle_r2(u, idx), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalError("operator_schmidt: SVD did not converge");
  OperatorSchmidt out;
  const auto& s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) {
    out.coefficients.push_back(s(i) * s(i));
    out.left_ops.push_back(unvectorize(svd.matrixU().col(i)));
    out.right_ops.push_back(unvectorize(svd.matrixV().col(i).conjugate()));
  }
  return out;
}

double operator_entanglement(const ComplexMatrix& u) {
  const auto idx = checked_unitary_bipartition(u, "operator_entanglement");
  return entanglement_from_purity(realigned_gram(u, idx).squaredNorm(), idx.d1);
}

double operator_entanglement(const OperatorSchmidt& schmidt) {
  double sum_sq = 0.0;
  for (double mu : schmidt.coefficients) sum_sq += mu * mu;
  return entanglement_from_purity(sum_sq, exact_sqrt(static_cast<Index>(schmidt.coefficients.size())));
}

double mixing_threshold(Index d) {
  if (d < 2) throw ValidationError("mixing_threshold: d must be at least 2");
  const double d2 = static_cast<double>(d * d);
  return (d2 - 2.0) / (d2 - 1.0);
}

SufficiencyVerdict sufficiency_verdict(const ComplexMatrix& u, const DensityMatrix& sigma) {
  const auto idx = checked_unitary_bipartition(u, "sufficiency_verdict");
  if (sigma.dim() != idx.d2) throw DimensionError("sufficiency_verdict: environment dimension mismatch");
  SufficiencyVerdict v;
  if (is_maximally_mixed(sigma)) {
    v.maximally_mixed_environment = true;
    v.witness = entanglement_from_purity(realigned_gram(u, idx).squaredNorm(), idx.d1);
    v.sufficient = v.witness > mixing_threshold(idx.d1);
    return v;
  }
  const ComplexMatrix ur = reshuffle_r2(u, idx);
  const ComplexMatrix m = ur * kron(identity(idx.d1), sigma.matrix()) * ur.adjoint();
  v.witness = (m * m).trace().real();
  v.sufficient = v.witness < 2.0;
  return v;
}

SpectralSumBounds spectral_sum_bounds(const Spectrum& sp, double e, Index d) {
  if (sp.values.size() != static_cast<std::size_t>(d * d)) {
    throw DimensionError("spectral_sum_bounds: spectrum size does not match d^2");
  }
  SpectralSumBounds b;
  for (std::size_t i = 1; i < sp.values.size(); ++i) b.sum_sq += std::norm(sp.values[i]);
  const double slack = std::max(0.0, 1.0 - e);
  b.bound = static_cast<double>(d * d - 1) * slack;
  b.lambda1_abs = sp.lambda1_abs();
  b.lambda1_bound = std::sqrt(b.bound);
  b.lambda_min_abs = std::abs(sp.values.back());
  b.lambda_min_bound = std::sqrt(slack);
  return b;
}

SpectralSumBounds spectral_sum_bounds(const Channel& ch, double e) {
  return spectral_sum_bounds(spectrum(ch), e, ch.dim());
}

bool is_dual_unitary(const ComplexMatrix& u, double tol) {
  const auto idx = checked_unitary_bipartition(u, "is_dual_unitary");
  return (realigned_gram(u, idx) - identity(u.rows())).norm() <= tol;
}

PurityCheck dual_unitary_purity_check(const ComplexMatrix& u, const DensityMatrix& sigma) {
  if (!is_dual_unitary(u)) {
    throw InapplicableError("dual_unitary_purity_check: U is not dual-unitary");
  }
  PurityCheck p;
  p.purity = sigma.purity();
  p.threshold = 2.0 / static_cast<double>(sigma.dim());
  p.sufficient = p.purity < p.threshold;
  return p;
}

LuOrbitReport lu_orbit_check(const ComplexMatrix& u, const ComplexMatrix& u1,
                             const ComplexMatrix& u2, const ComplexMatrix& u3,
                             const ComplexMatrix& u4, const DensityMatrix& sigma) {
  const ComplexMatrix dressed = kron(u1, u2) * u * kron(u3, u4);
  LuOrbitReport r;
  r.entanglement_before = operator_entanglement(u);
  r.entanglement_after = operator_entanglement(dressed);
  r.superop_norm_before = channel_from_unitary(u, sigma).superoperator().norm();
  // ||L'||_F with environment u4^dagger sigma u4 equals ||L||_F with sigma.
  const DensityMatrix rotated(u4.adjoint() * sigma.matrix() * u4);
  r.superop_norm_after = channel_from_unitary(dressed, rotated).superoperator().norm();
  return r;
}

}  // namespace qergo
