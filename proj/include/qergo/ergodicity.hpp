#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qergo/channel.hpp"
#include "qergo/tensor.hpp"

namespace qergo {

// Superoperator eigenvalues ordered by descending magnitude; ties (equal
// magnitude up to 1e-12) are broken by descending real part, then
// descending imaginary part.
struct Spectrum {
  std::vector<Complex> values;

  double lambda1_abs() const { return values.size() > 1 ? std::abs(values[1]) : 0.0; }
  double gap() const { return 1.0 - lambda1_abs(); }
};

Spectrum order_spectrum(std::vector<Complex> values);
Spectrum spectrum(const Channel& ch);

enum class ErgodicClass { Integrable, NonErgodic, ErgodicNotMixing, Mixing };

std::string_view to_string(ErgodicClass c);

struct ErgodicVerdict {
  ErgodicClass label = ErgodicClass::Mixing;
  std::size_t peripheral_count = 0;  // |lambda| >= 1 - epsilon
  std::size_t unit_count = 0;        // |lambda - 1| <= epsilon
  // Orthonormal basis (Hilbert-Schmidt) of the lambda = 1 eigenspace, only
  // filled by the Channel overload of classify.
  std::vector<ComplexMatrix> fixed_points;
  double epsilon = 0.0;

  // Integrable channels are a special case of non-ergodic ones.
  bool ergodic() const { return unit_count == 1; }
  bool mixing() const { return label == ErgodicClass::Mixing; }
};

// epsilon must lie in (0, 0.1).
ErgodicVerdict classify(const Spectrum& sp, double epsilon = kTolerances.classify_analytic);
ErgodicVerdict classify(const Channel& ch, const Spectrum& sp,
                        double epsilon = kTolerances.classify_analytic);

struct FixedPoint {
  DensityMatrix state;
  double residual;  // ||E(rho*) - rho*||_1
};

// Unique fixed state. Throws NonUniqueFixedPointError when the lambda = 1
// eigenspace is degenerate at the given epsilon.
FixedPoint fixed_point(const Channel& ch, double epsilon = kTolerances.classify_analytic);
FixedPoint fixed_point(const Channel& ch, const Spectrum& sp,
                       double epsilon = kTolerances.classify_analytic);

// Delta_n = ||E^n(rho0) - rho*||_1 for n = 0..n_max.
std::vector<double> iterate_convergence(const Channel& ch, const DensityMatrix& rho0, int n_max,
                                        double epsilon = kTolerances.classify_analytic);
std::vector<double> iterate_convergence(const Channel& ch, const DensityMatrix& rho0, int n_max,
                                        const DensityMatrix& fixed);

// Lambda_N = (1 / (N + 1)) sum_{n=0}^{N} E^n.
Channel cesaro_average(const Channel& ch, int n);

struct FormFactor {
  std::vector<double> k;            // K(n), n = 1..n_max (real part)
  std::vector<Complex> via_trace;   // (1/d^2) Tr L^n
  std::vector<Complex> via_spectrum;// (1/d^2) sum_i lambda_i^n
  double max_discrepancy = 0.0;
};

// Both routes are always evaluated; a discrepancy above
// kTolerances.sff_agreement raises NumericalError.
FormFactor generalized_sff(const Channel& ch, int n_max);
FormFactor generalized_sff(const Channel& ch, const Spectrum& sp, int n_max);

// Smallest n (1-based) with K(n) <= 1/d.
std::optional<int> scrambling_time(std::span<const double> k, Index d);

// 1 - (1/(d^2-1)) sum_{i>=1} |lambda_i|.
double mean_abs_indicator(const Spectrum& sp);

// Greedy matching distance between two multisets of equal size; returns
// the largest |a_i - b_pi(i)|.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace qergo
