#include "qergo/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <algorithm>

#include "qergo/entanglement.hpp"
#include "qergo/errors.hpp"

namespace qergo {

namespace {

ManyBodySpec spec_for_value(const ManyBodySpec& base, SweepParameter p, double value) {
  ManyBodySpec s = base;
  if (p == SweepParameter::H) {
    s.h = value;
  } else if (p == SweepParameter::L) {
    if (value != std::round(value)) {
      throw ValidationError("L sweep values must be integers");
    }
    s.n_sites = static_cast<int>(std::lround(value));
  }
  if (s.model == Model::SR) s.realizations = 1;
  return s;
}

double param_of(const ManyBodySpec& s, SweepParameter p) {
  switch (p) {
    case SweepParameter::H: return s.h;
    case SweepParameter::L: return s.n_sites;
    case SweepParameter::None: break;
  }
  return s.h;
}

struct Accumulator {
  double sum = 0.0, sum_sq = 0.0;
  int n = 0;
  void add(double x) { sum += x; sum_sq += x * x; ++n; }
  double mean() const { return n ? sum / n : 0.0; }
  double se() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1));
    return std::sqrt(var / n);
  }
};

void accumulate_series(std::vector<Accumulator>& acc, const std::vector<double>& xs) {
  if (acc.size() < xs.size()) acc.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) acc[i].add(xs[i]);
}

}  // namespace

Analyses parse_analyses(std::string_view list) {
  Analyses a;
  std::stringstream ss{std::string(list)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "spectrum") a.spectrum = true;
    else if (item == "gap") a.gap = true;
    else if (item == "entanglement") a.entanglement = true;
    else if (item == "delta_n") a.delta_n = true;
    else if (item == "sff") a.sff = true;
    else if (!item.empty()) throw ValidationError("unknown analysis '" + item + "'");
  }
  if (!a.any()) throw ValidationError("no analyses requested");
  return a;
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::H: return "h";
    case SweepParameter::L: return "L";
    case SweepParameter::None: break;
  }
  return "none";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "h") return SweepParameter::H;
  if (name == "L") return SweepParameter::L;
  throw ValidationError("sweep parameter must be h or L, got '" + std::string(name) + "'");
}

PointResult analyze_point(const ManyBodySpec& spec, int realization, const Analyses& analyses,
                          int n_max, double epsilon,
                          const std::optional<DensityMatrix>& initial_state) {
  spec.validate();
  if (n_max < 1 && (analyses.delta_n || analyses.sff)) {
    throw ValidationError("n_max must be at least 1");
  }
  PointResult r;
  r.realization = realization;
  r.n_sites = spec.n_sites;
  r.d = spec.system_dim();
  r.e_star = mixing_threshold(r.d);

  const ManyBodyChannel mb = manybody_channel(spec, realization);
  if (analyses.entanglement) r.op_ent = operator_entanglement(mb.unitary);

  const bool need_spectrum = analyses.spectrum || analyses.gap || analyses.delta_n || analyses.sff;
  if (need_spectrum) {
    const Spectrum sp = spectrum(mb.channel);
    const ErgodicVerdict v = classify(sp, epsilon);
    r.label = v.label;
    r.lambda1_abs = sp.lambda1_abs();
    r.gap = sp.gap();
    r.mean_abs_indicator = mean_abs_indicator(sp);
    if (analyses.spectrum) r.eigenvalues = sp.values;
    if (analyses.delta_n) {
      const FixedPoint fp = fixed_point(mb.channel, sp, epsilon);
      const DensityMatrix rho0 = initial_state ? *initial_state : neel_state(spec.system_sites());
      r.delta_n = iterate_convergence(mb.channel, rho0, n_max, fp.state);
    }
    if (analyses.sff) {
      const FormFactor ff = generalized_sff(mb.channel, sp, n_max);
      r.k = ff.k;
      r.n_s = scrambling_time(ff.k, r.d);
      r.sff_discrepancy = ff.max_discrepancy;
    }
  }
  r.ok = true;
  return r;
}

int default_worker_count() {
  if (const char* env = std::getenv("QERGO_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult run_sweep(const ManyBodySpec& base, const SweepOptions& opts) {
  if (opts.workers < 1) throw ValidationError("worker count must be at least 1");
  if (!opts.analyses.any()) throw ValidationError("no analyses requested");

  std::vector<ManyBodySpec> specs;
  if (opts.parameter == SweepParameter::None) {
    specs.push_back(spec_for_value(base, SweepParameter::None, 0.0));
  } else {
    if (opts.values.empty()) throw ValidationError("sweep values must be nonempty");
    for (double v : opts.values) specs.push_back(spec_for_value(base, opts.parameter, v));
  }
  // Reject bad parameters before any work starts.
  for (const auto& s : specs) s.validate();

  struct Task { std::size_t spec; int realization; };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (int r = 0; r < specs[i].realizations; ++r) tasks.push_back({i, r});

  SweepResult result;
  result.points.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      const ManyBodySpec& s = specs[task.spec];
      PointResult& out = result.points[t];
      try {
        out = analyze_point(s, task.realization, opts.analyses, opts.n_max, opts.epsilon,
                            opts.initial_state);
      } catch (const std::exception& e) {
        out = PointResult{};
        out.realization = task.realization;
        out.n_sites = s.n_sites;
        out.d = s.system_dim();
        out.ok = false;
        out.error = e.what();
      }
      out.param_value = param_of(s, opts.parameter);
    }
  };
  const int n_threads = std::min<int>(opts.workers, static_cast<int>(tasks.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Reduction runs in task order so means do not depend on scheduling.
  std::size_t t = 0;
  for (const auto& s : specs) {
    EnsembleMean m;
    m.param_value = param_of(s, opts.parameter);
    m.n_sites = s.n_sites;
    m.d = s.system_dim();
    m.e_star = mixing_threshold(m.d);
    Accumulator l1, gap, mai, ent;
    std::vector<Accumulator> dn, kn;
    const std::size_t first = t;
    for (int r = 0; r < s.realizations; ++r, ++t) {
      const PointResult& p = result.points[t];
      if (!p.ok) { ++m.failures; continue; }
      ++m.count;
      l1.add(p.lambda1_abs);
      gap.add(p.gap);
      mai.add(p.mean_abs_indicator);
      if (p.op_ent) ent.add(*p.op_ent);
      accumulate_series(dn, p.delta_n);
      accumulate_series(kn, p.k);
    }
    m.lambda1_abs = l1.mean();
    m.lambda1_abs_se = l1.se();
    m.gap = gap.mean();
    m.gap_se = gap.se();
    m.mean_abs_indicator = mai.mean();
    if (ent.n > 0) {
      m.op_ent = ent.mean();
      m.op_ent_se = ent.se();
    }
    for (const auto& a : dn) { m.delta_n.push_back(a.mean()); m.delta_n_se.push_back(a.se()); }
    for (const auto& a : kn) { m.k.push_back(a.mean()); m.k_se.push_back(a.se()); }
    if (!m.k.empty()) m.n_s = scrambling_time(m.k, m.d);

    if (opts.mean_channel && s.model == Model::SYK && m.count > 0) {
      const Index dim = s.system_dim() * s.system_dim();
      ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
      for (int r = 0; r < s.realizations; ++r) {
        if (result.points[first + static_cast<std::size_t>(r)].ok) {
          sum += manybody_channel(s, r).channel.superoperator();
        }
      }
      const Channel avg = Channel::from_superoperator(sum / static_cast<double>(m.count));
      m.mean_channel_lambda1_abs = spectrum(avg).lambda1_abs();
    }
    result.means.push_back(std::move(m));
  }
  return result;
}

}  // namespace qergo
