#include "qergo/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "qergo/errors.hpp"

namespace qergo {

namespace {

constexpr double kMagnitudeQuantum = 1e-12;

std::vector<ComplexMatrix> null_space_operators(const Channel& ch, std::size_t count) {
  const ComplexMatrix shifted = ch.superoperator() - identity(ch.superoperator().rows());
  Eigen::BDCSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalError("fixed space: SVD did not converge");
  const ComplexMatrix& v = svd.matrixV();
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(unvectorize(v.col(v.cols() - 1 - static_cast<Index>(k))));
  }
  return out;
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.1)) {
    throw ValidationError("classification epsilon must lie in (0, 0.1), got " +
                          std::to_string(epsilon));
  }
}

std::size_t count_unit(const Spectrum& sp, double epsilon) {
  return static_cast<std::size_t>(std::count_if(sp.values.begin(), sp.values.end(), [&](Complex z) {
    return std::abs(z - 1.0) <= epsilon;
  }));
}

}  // namespace

Spectrum order_spectrum(std::vector<Complex> values) {
  auto key = [](Complex z) { return std::llround(std::abs(z) / kMagnitudeQuantum); };
  std::sort(values.begin(), values.end(), [&](Complex a, Complex b) {
    const auto ka = key(a);
    const auto kb = key(b);
    if (ka != kb) return ka > kb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return Spectrum{std::move(values)};
}

Spectrum spectrum(const Channel& ch) { return order_spectrum(eig_general(ch.superoperator())); }

std::string_view to_string(ErgodicClass c) {
  switch (c) {
    case ErgodicClass::Integrable: return "integrable";
    case ErgodicClass::NonErgodic: return "non-ergodic";
    case ErgodicClass::ErgodicNotMixing: return "ergodic-not-mixing";
    case ErgodicClass::Mixing: return "mixing";
  }
  return "unknown";
}

ErgodicVerdict classify(const Spectrum& sp, double epsilon) {
  check_epsilon(epsilon);
  ErgodicVerdict v;
  v.epsilon = epsilon;
  v.unit_count = count_unit(sp, epsilon);
  v.peripheral_count = static_cast<std::size_t>(std::count_if(
      sp.values.begin(), sp.values.end(), [&](Complex z) { return std::abs(z) >= 1.0 - epsilon; }));
  if (!sp.values.empty() && v.unit_count == sp.values.size()) {
    v.label = ErgodicClass::Integrable;
  } else if (v.unit_count > 1) {
    v.label = ErgodicClass::NonErgodic;
  } else if (v.peripheral_count > 1) {
    v.label = ErgodicClass::ErgodicNotMixing;
  } else {
    v.label = ErgodicClass::Mixing;
  }
  return v;
}

ErgodicVerdict classify(const Channel& ch, const Spectrum& sp, double epsilon) {
  auto v = classify(sp, epsilon);
  v.fixed_points = null_space_operators(ch, v.unit_count);
  return v;
}

FixedPoint fixed_point(const Channel& ch, double epsilon) {
  return fixed_point(ch, spectrum(ch), epsilon);
}

FixedPoint fixed_point(const Channel& ch, const Spectrum& sp, double epsilon) {
  check_epsilon(epsilon);
  const auto units = count_unit(sp, epsilon);
  if (units != 1) throw NonUniqueFixedPointError(units);
  ComplexMatrix x = null_space_operators(ch, 1).front();
  const Complex tr = x.trace();
  if (std::abs(tr) < 1e-12) throw NumericalError("fixed point: null vector has vanishing trace");
  x /= tr;
  x = (x + x.adjoint()) / 2.0;
  x /= x.trace().real();
  const double residual = trace_norm(apply_to_operator(ch, x) - x);
  return FixedPoint{DensityMatrix(std::move(x)), residual};
}

std::vector<double> iterate_convergence(const Channel& ch, const DensityMatrix& rho0, int n_max,
                                        double epsilon) {
  return iterate_convergence(ch, rho0, n_max, fixed_point(ch, epsilon).state);
}

std::vector<double> iterate_convergence(const Channel& ch, const DensityMatrix& rho0, int n_max,
                                        const DensityMatrix& fixed) {
  if (n_max < 0) throw ValidationError("iterate_convergence: n_max must be non-negative");
  if (rho0.dim() != ch.dim() || fixed.dim() != ch.dim()) {
    throw DimensionError("iterate_convergence: state dimension does not match channel");
  }
  std::vector<double> deltas;
  deltas.reserve(static_cast<std::size_t>(n_max) + 1);
  ComplexVector state = vectorize(rho0.matrix());
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) state = ch.superoperator() * state;
    deltas.push_back(trace_norm(unvectorize(state) - fixed.matrix()));
  }
  return deltas;
}

Channel cesaro_average(const Channel& ch, int n) {
  if (n < 0) throw ValidationError("cesaro_average: N must be non-negative");
  const ComplexMatrix& l = ch.superoperator();
  ComplexMatrix power = identity(l.rows());
  ComplexMatrix sum = power;
  for (int k = 1; k <= n; ++k) {
    power = l * power;
    sum += power;
  }
  return Channel::from_superoperator(sum / static_cast<double>(n + 1));
}

FormFactor generalized_sff(const Channel& ch, int n_max) {
  return generalized_sff(ch, spectrum(ch), n_max);
}

FormFactor generalized_sff(const Channel& ch, const Spectrum& sp, int n_max) {
  if (n_max < 1) throw ValidationError("generalized_sff: n_max must be at least 1");
  const double norm = static_cast<double>(ch.dim() * ch.dim());
  FormFactor out;
  const ComplexMatrix& l = ch.superoperator();
  ComplexMatrix power = l;
  std::vector<Complex> pows(sp.values.begin(), sp.values.end());
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      power = power * l;
      for (std::size_t i = 0; i < pows.size(); ++i) pows[i] *= sp.values[i];
    }
    const Complex by_trace = power.trace() / norm;
    Complex by_spec = 0.0;
    for (const auto& p : pows) by_spec += p;
    by_spec /= norm;
    out.via_trace.push_back(by_trace);
    out.via_spectrum.push_back(by_spec);
    out.k.push_back(by_trace.real());
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(by_trace - by_spec));
  }
  if (out.max_discrepancy > kTolerances.sff_agreement) {
    throw NumericalError("generalized_sff: trace and spectral routes disagree by " +
                         std::to_string(out.max_discrepancy));
  }
  return out;
}

std::optional<int> scrambling_time(std::span<const double> k, Index d) {
  if (k.empty()) throw ValidationError("scrambling_time: empty K(n) sequence");
  if (d < 1) throw ValidationError("scrambling_time: dimension must be positive");
  const double threshold = 1.0 / static_cast<double>(d);
  for (std::size_t n = 0; n < k.size(); ++n) {
    if (k[n] <= threshold) return static_cast<int>(n) + 1;
  }
  return std::nullopt;
}

double mean_abs_indicator(const Spectrum& sp) {
  if (sp.values.size() < 2) return 1.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < sp.values.size(); ++i) sum += std::abs(sp.values[i]);
  return 1.0 - sum / static_cast<double>(sp.values.size() - 1);
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& z : a) {
    std::size_t best = b.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(z - b[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

}  // namespace qergo
