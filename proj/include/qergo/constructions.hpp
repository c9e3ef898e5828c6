#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "qergo/channel.hpp"
#include "qergo/ergodicity.hpp"
#include "qergo/tensor.hpp"

namespace qergo {

// All randomness in the library goes through this engine so that results
// are replayable from a recorded seed.
using Rng = std::mt19937_64;

// Point of the two-qubit Weyl chamber, 0 <= |z| <= y <= x <= pi/4.
struct WeylPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool valid(double tol = 1e-12) const;
};

// Throws ValidationError when the chamber inequalities fail.
WeylPoint make_weyl_point(double x, double y, double z);

namespace gates {
WeylPoint local_point();
WeylPoint cnot_point();
WeylPoint dcnot_point();
WeylPoint swap_point();

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix cnot();
ComplexMatrix swap();
}  // namespace gates

// x XX + y YY + z ZZ.
ComplexMatrix weyl_generator(const WeylPoint& p);
// exp[-i (x XX + y YY + z ZZ)], entry by entry in the closed form.
ComplexMatrix weyl_unitary(const WeylPoint& p);

// (1, l1, l2, l3): the channel eigenvalues at sigma = I/2, unordered, with
//   l1 = [cos 2(x+y) + cos 2(x-y)] / 2, l2 = cos 2y cos 2z, l3 = cos 2x cos 2z.
std::array<double, 4> weyl_channel_spectrum_analytic(const WeylPoint& p);

// Bell vectors phi_0..phi_3 that diagonalize the Weyl-family superoperator,
// matched index by index with weyl_channel_spectrum_analytic.
std::array<ComplexVector, 4> weyl_bell_vectors();

enum class WeylLine { LocalCnot, CnotDcnot, DcnotSwap, LocalDcnot, LocalSwap };

std::string_view to_string(WeylLine line);
WeylLine parse_weyl_line(std::string_view name);
std::pair<WeylPoint, WeylPoint> weyl_line_endpoints(WeylLine line);

struct WeylLinePoint {
  WeylPoint point;
  std::array<double, 4> analytic;
  Spectrum numeric;
  ErgodicVerdict verdict;
  double analytic_deviation = 0.0;  // multiset distance analytic vs numeric
  double entanglement = 0.0;
};

WeylLinePoint evaluate_weyl_point(const WeylPoint& p, double epsilon = kTolerances.classify_analytic);
std::vector<WeylLinePoint> weyl_line(const WeylPoint& start, const WeylPoint& end, int steps,
                                     double epsilon = kTolerances.classify_analytic);

struct BlockDiagonalSpec {
  Index d = 0;
  std::vector<ComplexMatrix> blocks;  // d unitary d x d blocks
};

struct BlockDiagonalChannel {
  ComplexMatrix unitary;               // direct sum of the blocks
  Channel channel;                     // sigma = I/d
  std::vector<Complex> analytic;       // lambda_ij = Tr(u_i u_j^dagger) / d, index i*d + j
};

BlockDiagonalChannel block_diagonal_channel(const BlockDiagonalSpec& spec);

// Haar measure via QR of a complex Ginibre matrix with the phases of
// diag(R) absorbed into Q.
ComplexMatrix haar_random_unitary(Index n, Rng& rng);
ComplexMatrix haar_random_unitary(Index n, std::uint64_t seed);

// Normalized G G^dagger for complex Ginibre G (Hilbert-Schmidt measure).
DensityMatrix random_density_matrix(Index d, Rng& rng);
// Haar-random pure state.
DensityMatrix random_pure_state(Index d, Rng& rng);

}  // namespace qergo
