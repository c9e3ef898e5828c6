#include "qergo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qergo/errors.hpp"

namespace qergo {

namespace {

void check_unitary(const ComplexMatrix& u, const char* what) {
  require_square(u, what);
  const double defect = unitarity_defect(u);
  if (!(defect <= kTolerances.unitarity)) {
    throw ValidationError(std::string(what) + ": ||U U^dagger - I||_F = " +
                          std::to_string(defect) + " exceeds " +
                          std::to_string(kTolerances.unitarity));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  require_square(mat_, "density matrix");
  if (!all_finite(mat_)) throw ValidationError("density matrix: non-finite entries");
  const double herm = hermiticity_defect(mat_);
  if (herm > kTolerances.state_hermiticity * std::max(1.0, mat_.norm())) {
    throw ValidationError("density matrix: not Hermitian (||rho - rho^dagger||_F = " +
                          std::to_string(herm) + ")");
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > kTolerances.state_trace) {
    throw ValidationError("density matrix: trace " + std::to_string(tr.real()) +
                          " differs from 1");
  }
  const auto eig = eig_hermitian(mat_, 1.0);
  if (eig.values.minCoeff() < kTolerances.state_min_eigenvalue) {
    throw ValidationError("density matrix: negative eigenvalue " +
                          std::to_string(eig.values.minCoeff()));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  if (d < 1) throw ValidationError("maximally_mixed: dimension must be positive");
  return DensityMatrix(identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw ValidationError("pure state: zero vector");
  return DensityMatrix(psi * psi.adjoint() / n2);
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

Channel Channel::from_superoperator(ComplexMatrix superop) {
  const auto idx = square_bipartition(superop);
  if (!all_finite(superop)) throw ValidationError("superoperator has non-finite entries");
  return Channel(idx.d1, std::move(superop));
}

Channel Channel::identity(Index d) {
  if (d < 1) throw ValidationError("identity channel: dimension must be positive");
  return Channel(d, qergo::identity(d * d));
}

ComplexMatrix Channel::choi() const { return reshuffle_r2(superop_, BipartiteIndex::square(d_)); }

CptpReport verify_cptp(const Channel& ch) {
  CptpReport report;
  const ComplexMatrix choi = ch.choi();
  report.choi_hermiticity_defect = hermiticity_defect(choi);
  const auto eig = eig_hermitian(choi, 1e-8);
  report.min_choi_eigenvalue = eig.values.minCoeff();
  report.completely_positive = report.min_choi_eigenvalue >= kTolerances.choi_psd;
  // sum_i A_i^dagger A_i = Tr_1 of D with the transpose on the remaining
  // factor; its deviation from I has the same Frobenius norm.
  const ComplexMatrix tp = partial_trace(choi, BipartiteIndex::square(ch.dim()), Subsystem::Second);
  report.trace_preservation_defect = (tp - qergo::identity(ch.dim())).norm();
  report.trace_preserving = report.trace_preservation_defect <= kTolerances.trace_preservation;
  return report;
}

Channel channel_from_unitary(const ComplexMatrix& u, const DensityMatrix& sigma) {
  check_unitary(u, "channel_from_unitary");
  const auto idx = square_bipartition(u);
  if (sigma.dim() != idx.d2) {
    throw DimensionError("channel_from_unitary: environment state has dimension " +
                         std::to_string(sigma.dim()) + ", expected " + std::to_string(idx.d2));
  }
  const ComplexMatrix ur = reshuffle_r2(u, idx);
  const ComplexMatrix inner = ur * kron(qergo::identity(idx.d1), sigma.matrix()) * ur.adjoint();
  return Channel::from_superoperator(reshuffle_r2(inner, idx));
}

ComplexMatrix apply_to_operator(const Channel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.dim() || x.cols() != ch.dim()) {
    throw DimensionError("apply: operator is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", channel acts on dimension " +
                         std::to_string(ch.dim()));
  }
  return unvectorize(ch.superoperator() * vectorize(x));
}

DensityMatrix apply_superop(const Channel& ch, const DensityMatrix& rho) {
  return DensityMatrix(apply_to_operator(ch, rho.matrix()));
}

DensityMatrix brute_force_apply(const ComplexMatrix& u, const DensityMatrix& sigma,
                                const DensityMatrix& rho) {
  check_unitary(u, "brute_force_apply");
  const BipartiteIndex idx{rho.dim(), sigma.dim()};
  if (idx.dim() != u.rows()) {
    throw DimensionError("brute_force_apply: U does not act on rho (x) sigma");
  }
  const ComplexMatrix joint = u * kron(rho.matrix(), sigma.matrix()) * u.adjoint();
  return DensityMatrix(partial_trace(joint, idx, Subsystem::First));
}

std::vector<ComplexMatrix> kraus_from_choi(const Channel& ch) {
  const auto eig = eig_hermitian(ch.choi(), 1e-8);
  const double cutoff = kTolerances.kraus_cutoff_per_dim * static_cast<double>(ch.dim());
  if (eig.values.minCoeff() < kTolerances.choi_psd) {
    throw NotCompletelyPositiveError("kraus_from_choi: Choi eigenvalue " +
                                     std::to_string(eig.values.minCoeff()) +
                                     " is below the PSD tolerance");
  }
  std::vector<ComplexMatrix> kraus;
  // Largest weights first.
  for (Index k = eig.values.size() - 1; k >= 0; --k) {
    const double g = eig.values(k);
    if (g <= cutoff) break;
    kraus.push_back(std::sqrt(g) * unvectorize(eig.vectors.col(k)));
  }
  return kraus;
}

Channel channel_from_kraus(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw ValidationError("channel_from_kraus: empty Kraus set");
  const Index d = kraus.front().rows();
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  ComplexMatrix superop = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : kraus) {
    if (a.rows() != d || a.cols() != d) {
      throw DimensionError("channel_from_kraus: Kraus operators must all be " +
                           std::to_string(d) + "x" + std::to_string(d));
    }
    completeness += a.adjoint() * a;
    superop += kron(a, a.conjugate());
  }
  const double defect = (completeness - qergo::identity(d)).norm();
  if (defect > kTolerances.trace_preservation) {
    throw TracePreservationError("channel_from_kraus: ||sum A^dagger A - I||_F = " +
                                 std::to_string(defect));
  }
  return Channel::from_superoperator(std::move(superop));
}

Channel adjoint_channel(const Channel& ch) {
  // E^dagger(X) = sum A^dagger X A has superoperator sum A^dagger (x) A^T = L^dagger.
  return Channel::from_superoperator(ch.superoperator().adjoint());
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("compose: channel dimensions differ");
  return Channel::from_superoperator(outer.superoperator() * inner.superoperator());
}

Channel channel_power(const Channel& ch, int n) {
  if (n < 0) throw ValidationError("channel_power: n must be non-negative");
  ComplexMatrix result = qergo::identity(ch.superoperator().rows());
  ComplexMatrix base = ch.superoperator();
  for (unsigned k = static_cast<unsigned>(n); k > 0; k >>= 1) {
    if (k & 1u) result = result * base;
    if (k > 1) base = base * base;
  }
  return Channel::from_superoperator(std::move(result));
}

}  // namespace qergo
