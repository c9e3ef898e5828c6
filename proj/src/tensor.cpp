#include "qergo/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qergo/errors.hpp"

namespace qergo {

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

Index exact_sqrt(Index n) {
  if (n < 0) return -1;
  auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  for (Index c = r > 0 ? r - 1 : 0; c <= r + 1; ++c) {
    if (c * c == n) return c;
  }
  return -1;
}

BipartiteIndex square_bipartition(const ComplexMatrix& a) {
  require_square(a, "bipartition");
  const Index d = exact_sqrt(a.rows());
  if (d < 1) {
    throw DimensionError("dimension " + std::to_string(a.rows()) +
                         " is not a d*d bipartite product");
  }
  return BipartiteIndex::square(d);
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexVector vectorize(const ComplexMatrix& a) {
  require_square(a, "vectorize");
  const Index d = a.rows();
  ComplexVector v(d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) v(i * d + j) = a(i, j);
  return v;
}

ComplexMatrix unvectorize(const ComplexVector& v) {
  const Index d = exact_sqrt(v.size());
  if (d < 1) {
    throw DimensionError("unvectorize: length " + std::to_string(v.size()) +
                         " is not a perfect square");
  }
  ComplexMatrix a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = v(i * d + j);
  return a;
}

ComplexMatrix reshuffle_r2(const ComplexMatrix& a, BipartiteIndex idx) {
  require_square(a, "reshuffle_r2");
  if (idx.d1 != idx.d2 || idx.d1 < 1) {
    throw DimensionError("reshuffle_r2: only equal bipartitions d1 == d2 are supported");
  }
  if (idx.dim() != a.rows()) {
    throw DimensionError("reshuffle_r2: bipartition " + std::to_string(idx.d1) + "x" +
                         std::to_string(idx.d2) + " does not match dimension " +
                         std::to_string(a.rows()));
  }
  const Index d = idx.d1;
  ComplexMatrix out(a.rows(), a.cols());
  for (Index i = 0; i < d; ++i)
    for (Index al = 0; al < d; ++al)
      for (Index j = 0; j < d; ++j)
        for (Index be = 0; be < d; ++be)
          out(i * d + j, al * d + be) = a(i * d + al, j * d + be);
  return out;
}

ComplexMatrix reshuffle_r2(const ComplexMatrix& a) {
  return reshuffle_r2(a, square_bipartition(a));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, BipartiteIndex idx, Subsystem keep) {
  require_square(a, "partial_trace");
  if (idx.dim() != a.rows()) {
    throw DimensionError("partial_trace: bipartition " + std::to_string(idx.d1) + "x" +
                         std::to_string(idx.d2) + " does not match dimension " +
                         std::to_string(a.rows()));
  }
  if (keep == Subsystem::First) {
    ComplexMatrix out = ComplexMatrix::Zero(idx.d1, idx.d1);
    for (Index i = 0; i < idx.d1; ++i)
      for (Index j = 0; j < idx.d1; ++j)
        for (Index g = 0; g < idx.d2; ++g) out(i, j) += a(idx.compose(i, g), idx.compose(j, g));
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(idx.d2, idx.d2);
  for (Index g = 0; g < idx.d1; ++g)
    out += a.block(g * idx.d2, g * idx.d2, idx.d2, idx.d2);
  return out;
}

std::vector<Complex> eig_general(const ComplexMatrix& a) {
  require_square(a, "eig_general");
  if (!all_finite(a)) throw NumericalError("eig_general: input has non-finite entries");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_general: complex Schur iteration did not converge (n = " +
                         std::to_string(a.rows()) + ")");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> out(ev.data(), ev.data() + ev.size());
  for (const auto& z : out) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError("eig_general: non-finite eigenvalue");
    }
  }
  return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix& a, double rel_tol) {
  require_square(a, "eig_hermitian");
  const double defect = hermiticity_defect(a);
  const double scale = a.norm();
  if (defect > rel_tol * scale && defect > 0.0) {
    throw ValidationError("eig_hermitian: ||A - A^dagger||_F = " + std::to_string(defect) +
                          " exceeds tolerance " + std::to_string(rel_tol * scale));
  }
  const ComplexMatrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: solver did not converge (n = " +
                         std::to_string(a.rows()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_norm(const ComplexMatrix& a) {
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  if (svd.info() != Eigen::Success) throw NumericalError("trace_norm: SVD did not converge");
  return svd.singularValues().sum();
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double spectral_radius(const ComplexMatrix& a) {
  double r = 0.0;
  for (const auto& z : eig_general(a)) r = std::max(r, std::abs(z));
  return r;
}

ComplexMatrix matrix_exponential_i(const ComplexMatrix& h, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("matrix_exponential_i: sign must be +1 or -1");
  const auto eig = eig_hermitian(h);
  ComplexVector phases(eig.values.size());
  for (Index k = 0; k < phases.size(); ++k)
    phases(k) = std::polar(1.0, static_cast<double>(sign) * eig.values(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double hermiticity_defect(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u * u.adjoint() - identity(u.rows())).norm();
}

bool all_finite(const ComplexMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

}  // namespace qergo
