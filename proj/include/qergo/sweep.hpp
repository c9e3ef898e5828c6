#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qergo/ergodicity.hpp"
#include "qergo/manybody.hpp"
#include "qergo/tolerances.hpp"

namespace qergo {

struct Analyses {
  bool spectrum = false;
  bool gap = false;
  bool entanglement = false;
  bool delta_n = false;
  bool sff = false;

  bool any() const { return spectrum || gap || entanglement || delta_n || sff; }
};

// Comma-separated subset of {spectrum, gap, entanglement, delta_n, sff}.
Analyses parse_analyses(std::string_view list);

enum class SweepParameter { None, H, L };

std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepOptions {
  SweepParameter parameter = SweepParameter::None;
  std::vector<double> values;  // ignored when parameter is None
  Analyses analyses;
  int n_max = 50;
  int workers = 1;
  double epsilon = kTolerances.classify_manybody;
  // SYK only: also report |lambda_1| of the realization-averaged channel.
  bool mean_channel = false;
  // Initial state for delta_n; defaults to the Neel state of the system.
  std::optional<DensityMatrix> initial_state;
};

struct PointResult {
  double param_value = 0.0;
  int realization = 0;
  int n_sites = 0;
  Index d = 0;
  bool ok = false;
  std::string error;

  std::vector<Complex> eigenvalues;  // filled when spectrum requested
  std::optional<ErgodicClass> label;
  double lambda1_abs = 0.0;
  double gap = 0.0;
  double mean_abs_indicator = 0.0;
  std::optional<double> op_ent;
  double e_star = 0.0;
  std::vector<double> delta_n;  // n = 0..n_max
  std::vector<double> k;        // n = 1..n_max
  std::optional<int> n_s;
  double sff_discrepancy = 0.0;
};

struct EnsembleMean {
  double param_value = 0.0;
  int n_sites = 0;
  Index d = 0;
  int count = 0;     // successful realizations
  int failures = 0;
  double lambda1_abs = 0.0, lambda1_abs_se = 0.0;
  double gap = 0.0, gap_se = 0.0;
  double mean_abs_indicator = 0.0;
  std::optional<double> op_ent, op_ent_se;
  double e_star = 0.0;
  std::vector<double> delta_n, delta_n_se;
  std::vector<double> k, k_se;
  std::optional<int> n_s;  // from the mean K(n)
  std::optional<double> mean_channel_lambda1_abs;
};

struct SweepResult {
  std::vector<PointResult> points;  // ordered by (value index, realization)
  std::vector<EnsembleMean> means;  // one per parameter value
};

// Evaluates one realization; throws on failure.
PointResult analyze_point(const ManyBodySpec& spec, int realization, const Analyses& analyses,
                          int n_max, double epsilon,
                          const std::optional<DensityMatrix>& initial_state = std::nullopt);

// Runs every (value, realization) task on a pool of opts.workers threads.
// Failed tasks are reported with ok = false and excluded from the means.
SweepResult run_sweep(const ManyBodySpec& base, const SweepOptions& opts);

// QERGO_WORKERS when set and positive, otherwise hardware concurrency.
int default_worker_count();

}  // namespace qergo
