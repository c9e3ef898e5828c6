#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qergo/tolerances.hpp"

namespace qergo {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Composite index convention for H^{d1} (x) H^{d2}: basis vector |i a>
// sits at i * d2 + a, so subsystem 1 is the slow index.
struct BipartiteIndex {
  Index d1 = 0;
  Index d2 = 0;

  static BipartiteIndex square(Index d) { return {d, d}; }
  Index dim() const { return d1 * d2; }
  Index compose(Index i, Index a) const { return i * d2 + a; }
};

// Infers d with d * d == A.rows() for a square matrix A.
BipartiteIndex square_bipartition(const ComplexMatrix& a);

// Exact integer square root, or -1 when n is not a perfect square.
Index exact_sqrt(Index n);

enum class Subsystem { First, Second };

ComplexMatrix identity(Index n);

// <ij|A> = <i|A|j>: entry (i, j) lands at i * d + j.
ComplexVector vectorize(const ComplexMatrix& a);
ComplexMatrix unvectorize(const ComplexVector& v);

// <i a|A|j b> = <i j|A^{R2}|a b>. An involution.
ComplexMatrix reshuffle_r2(const ComplexMatrix& a, BipartiteIndex idx);
ComplexMatrix reshuffle_r2(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& a, BipartiteIndex idx, Subsystem keep);

// Eigenvalues of a general square matrix via complex Schur reduction,
// with algebraic multiplicity. Throws NumericalError on non-convergence.
std::vector<Complex> eig_general(const ComplexMatrix& a);

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns orthonormal
};

// Symmetrizes (A + A^dagger) / 2 when ||A - A^dagger||_F is within
// rel_tol * ||A||_F, otherwise throws ValidationError.
HermitianEigen eig_hermitian(const ComplexMatrix& a,
                             double rel_tol = kTolerances.hermiticity_rel);

double trace_norm(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double spectral_radius(const ComplexMatrix& a);

// e^{sign * i H} for Hermitian H, evaluated in the eigenbasis of H.
ComplexMatrix matrix_exponential_i(const ComplexMatrix& h, int sign = +1);

double hermiticity_defect(const ComplexMatrix& a);
double unitarity_defect(const ComplexMatrix& u);
bool all_finite(const ComplexMatrix& a);

void require_square(const ComplexMatrix& a, const char* what);

}  // namespace qergo
