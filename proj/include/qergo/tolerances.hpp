#pragma once

namespace qergo {

// Numerical thresholds shared by all modules. Functions that take a
// tolerance argument default to the matching field of kTolerances.
struct Tolerances {
  // ||A - A^dagger||_F allowed relative to ||A||_F before a Hermitian solve;
  // below it the input is symmetrized silently.
  double hermiticity_rel = 1e-10;
  // ||U U^dagger - I||_F for any matrix accepted as unitary.
  double unitarity = 1e-8;
  // Density matrices: |Tr rho - 1|, minimum eigenvalue, Hermiticity.
  double state_trace = 1e-10;
  double state_min_eigenvalue = -1e-10;
  double state_hermiticity = 1e-10;
  // Minimum Choi eigenvalue accepted as completely positive.
  double choi_psd = -1e-9;
  // Choi eigenvalues below kraus_cutoff_per_dim * d are dropped.
  double kraus_cutoff_per_dim = 1e-12;
  // ||sum A_i^dagger A_i - I||_F for a Kraus set.
  double trace_preservation = 1e-9;
  double dual_unitary = 1e-8;
  // Peripheral-spectrum thresholds for classification.
  double classify_analytic = 1e-8;
  double classify_manybody = 1e-6;
  // Required agreement of the two generalized-SFF routes.
  double sff_agreement = 1e-9;
};

inline constexpr Tolerances kTolerances{};

}  // namespace qergo
