#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/report.hpp"
#include "qergo/channel.hpp"
#include "qergo/constructions.hpp"
#include "qergo/entanglement.hpp"
#include "qergo/ergodicity.hpp"
#include "qergo/errors.hpp"
#include "qergo/manybody.hpp"
#include "qergo/matrix_io.hpp"
#include "qergo/sweep.hpp"
#include "qergo/tolerances.hpp"

namespace qergo::cli {

namespace {

constexpr const char* kMaximallyMixed = "maximally-mixed";

struct CommonArgs {
  std::string format = "csv";
  std::string out;
  std::string table;
  std::optional<double> epsilon;
  int workers = 1;
};

struct ModelArgs {
  std::string model = "sr";
  int n_sites = 8;
  double h = 0.0;
  double V = 1.0;
  double J = 1.0;
  double alpha = std::numbers::phi - 1.0;
  std::uint64_t seed = 0;
  int realizations = 0;  // 0: one for SR, 100 for SYK
  std::string normalization = "half-chain";
  int max_sites = 12;
};

// Input for commands accepting either a dilation file or a model.
struct ChannelArgs {
  std::string unitary;
  std::string sigma = kMaximallyMixed;
};

struct ClassifyArgs {
  ChannelArgs input;
};

struct WeylArgs {
  std::string point;
  std::string line;
  int steps = 9;
};

struct ManyBodyArgs {
  std::string analyses = "gap,entanglement";
  int n_max = 50;
  bool mean_channel = false;
  std::string state = "neel";
};

struct IterateArgs {
  ChannelArgs input;
  int n_max = 50;
  std::string state;
};

struct SffArgs {
  ChannelArgs input;
  int n_max = 50;
};

struct SweepArgs {
  std::string param = "h";
  std::optional<double> from, to;
  int steps = 0;
  std::vector<double> values;
  std::string analyses = "gap";
  int n_max = 50;
  bool mean_channel = false;
};

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ValidationError("--format must be csv or json, got '" + s + "'");
}

double resolve_epsilon(const std::optional<double>& given, double fallback) {
  const double eps = given.value_or(fallback);
  if (!(eps > 0.0 && eps < 0.1)) {
    throw ValidationError("--epsilon must lie in (0, 0.1), got " + format_number(eps));
  }
  return eps;
}

void require_positive(int value, const char* flag) {
  if (value < 1) throw ValidationError(std::string(flag) + " must be at least 1");
}

ManyBodySpec to_spec(const ModelArgs& m) {
  ManyBodySpec s;
  s.model = parse_model(m.model);
  s.n_sites = m.n_sites;
  s.h = m.h;
  s.V = m.V;
  s.J = m.J;
  s.alpha = m.alpha;
  s.seed = m.seed;
  s.max_sites = m.max_sites;
  s.normalization = parse_syk_normalization(m.normalization);
  if (m.realizations < 0) throw ValidationError("--realizations must be at least 1");
  if (s.model == Model::SR) {
    s.realizations = 1;
  } else {
    s.realizations = m.realizations == 0 ? 100 : m.realizations;
  }
  s.validate();
  return s;
}

void add_common(CLI::App* sub, CommonArgs& c) {
  sub->add_option("--format", c.format, "Output format: csv or json")->capture_default_str();
  sub->add_option("--out", c.out, "Write results to this file instead of stdout");
  sub->add_option("--table", c.table, "Emit only the named table");
  sub->add_option("--epsilon", c.epsilon, "Classification tolerance, in (0, 0.1)");
  sub->add_option("--workers", c.workers, "Worker threads (default from QERGO_WORKERS or core count)")
      ->capture_default_str();
}

void add_model(CLI::App* sub, ModelArgs& m, bool required) {
  auto* opt = sub->add_option("--model", m.model, "Many-body model: sr or syk");
  if (required) opt->capture_default_str();
  sub->add_option("--L", m.n_sites, "Chain length L (even); the first L/2 sites form the system")
      ->capture_default_str();
  sub->add_option("--h", m.h, "SR quasiperiodic potential strength")->capture_default_str();
  sub->add_option("--V", m.V, "SR nearest-neighbour interaction")->capture_default_str();
  sub->add_option("--J", m.J, "SYK coupling scale")->capture_default_str();
  sub->add_option("--alpha", m.alpha, "SR potential wave number")->capture_default_str();
  sub->add_option("--seed", m.seed, "Base seed; realization r uses seed + r")->capture_default_str();
  sub->add_option("--realizations", m.realizations, "SYK disorder realizations (default 100)");
  sub->add_option("--normalization", m.normalization,
                  "SYK coupling variance: half-chain (J^2/(L/2)^3) or full-chain (J^2/L^3)")
      ->capture_default_str();
  sub->add_option("--max-L", m.max_sites, "Largest accepted L")->capture_default_str();
}

void add_channel_input(CLI::App* sub, ChannelArgs& c) {
  sub->add_option("--unitary", c.unitary, "JSON matrix file with the d^2 x d^2 dilation unitary");
  sub->add_option("--sigma", c.sigma, "Environment state: JSON matrix file or maximally-mixed")
      ->capture_default_str();
}

void base_metadata(Report& r, const std::string& command, double epsilon) {
  r.meta("program", "qergo");
  r.meta("version", kVersion);
  r.meta("command", command);
  r.meta("epsilon", format_number(epsilon));
  r.meta("tolerance.unitarity", format_number(kTolerances.unitarity));
  r.meta("tolerance.choi_psd", format_number(kTolerances.choi_psd));
  r.meta("tolerance.trace_preservation", format_number(kTolerances.trace_preservation));
  r.meta("tolerance.sff_agreement", format_number(kTolerances.sff_agreement));
  r.meta("convention.index", "composite index i*d2+alpha, system factor slowest");
  r.meta("convention.vectorization", "<ij|A> = A[i,j]");
  r.meta("convention.eigen_order", "abs desc (quantized 1e-12), then re desc, then im desc");
}

void model_metadata(Report& r, const ManyBodySpec& s) {
  r.meta("model", std::string(to_string(s.model)));
  r.meta("L", std::to_string(s.n_sites));
  r.meta("d", std::to_string(s.system_dim()));
  r.meta("seed", std::to_string(s.seed));
  r.meta("realizations", std::to_string(s.realizations));
  r.meta("convention.unitary", "U = exp(+iH); sites 1..L/2 system, L/2+1..L bath (maximally mixed)");
  r.meta("convention.jordan_wigner", "c_i = (prod_{j<i} Z_j) sigma^-_i, |0> empty");
  if (s.model == Model::SR) {
    r.meta("V", format_number(s.V));
    r.meta("h", format_number(s.h));
    r.meta("alpha", format_number(s.alpha));
  } else {
    r.meta("J", format_number(s.J));
    r.meta("syk.normalization", std::string(to_string(s.normalization)));
    r.meta("syk.variance", format_number(s.syk_coupling_variance()));
    r.meta("syk.sum", "all (i,j,k,l) with antisymmetrized couplings");
  }
}

DensityMatrix load_state(const std::string& arg, Index d) {
  if (arg == kMaximallyMixed) return DensityMatrix::maximally_mixed(d);
  if (arg == "zero") {
    ComplexVector psi = ComplexVector::Zero(d);
    psi(0) = 1.0;
    return DensityMatrix::pure(psi);
  }
  DensityMatrix rho(read_matrix_file(arg));
  if (rho.dim() != d) {
    throw DimensionError("state in " + arg + " has dimension " + std::to_string(rho.dim()) +
                         ", expected " + std::to_string(d));
  }
  return rho;
}

struct DilationInput {
  ComplexMatrix unitary;
  DensityMatrix sigma;
  Channel channel;
};

DilationInput load_dilation(const ChannelArgs& c) {
  ComplexMatrix u = read_matrix_file(c.unitary);
  const Index d = square_bipartition(u).d1;
  DensityMatrix sigma = c.sigma == kMaximallyMixed ? DensityMatrix::maximally_mixed(d)
                                                   : DensityMatrix(read_matrix_file(c.sigma));
  Channel ch = channel_from_unitary(u, sigma);
  return DilationInput{std::move(u), std::move(sigma), std::move(ch)};
}

void dilation_metadata(Report& r, const ChannelArgs& c, Index d) {
  r.meta("unitary", c.unitary);
  r.meta("sigma", c.sigma);
  r.meta("d", std::to_string(d));
}

Cell opt_cell(const std::optional<double>& x) {
  return x ? Cell{*x} : Cell{};
}

Cell opt_cell(const std::optional<int>& x) {
  return x ? Cell{static_cast<std::int64_t>(*x)} : Cell{};
}

Table spectrum_table() {
  return Table("spectrum", {"param_value", "realization", "eig_index", "re", "im", "abs"});
}

void add_spectrum_rows(Table& t, Cell param, Cell realization, const std::vector<Complex>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    t.add_row({param, realization, static_cast<std::int64_t>(i), values[i].real(), values[i].imag(),
               std::abs(values[i])});
  }
}

void emit(const Report& r, const CommonArgs& c, std::ostream& out) {
  const Format f = parse_format(c.format);
  if (c.out.empty()) {
    write_report(r, f, out, c.table);
    return;
  }
  // Render first so a bad --table leaves no partial file behind.
  std::ostringstream buffer;
  write_report(r, f, buffer, c.table);
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file " + c.out);
  file << buffer.str();
  if (!file) throw ValidationError("failed writing output file " + c.out);
}

// ---- classify -------------------------------------------------------------

int cmd_classify(const ClassifyArgs& a, const CommonArgs& c, std::ostream& out) {
  const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_analytic);
  if (a.input.unitary.empty()) throw ValidationError("classify requires --unitary");
  const DilationInput in = load_dilation(a.input);
  const Index d = in.channel.dim();
  const CptpReport cptp = verify_cptp(in.channel);
  const Spectrum sp = spectrum(in.channel);
  const ErgodicVerdict v = classify(in.channel, sp, eps);
  const double ent = operator_entanglement(in.unitary);
  const SufficiencyVerdict suff = sufficiency_verdict(in.unitary, in.sigma);

  std::optional<FixedPoint> fp;
  if (v.ergodic()) fp = fixed_point(in.channel, sp, eps);

  Report r;
  base_metadata(r, "classify", eps);
  dilation_metadata(r, a.input, d);

  Table summary("summary", {"d", "label", "ergodic", "mixing", "unit_count", "peripheral_count",
                            "lambda1_abs", "gap", "op_ent", "e_star", "sufficient",
                            "sufficiency_witness", "mean_abs_indicator", "min_choi_eigenvalue",
                            "trace_preservation_defect", "fixed_point_residual"});
  summary.add_row({static_cast<std::int64_t>(d), std::string(to_string(v.label)), v.ergodic(),
                   v.mixing(), static_cast<std::int64_t>(v.unit_count),
                   static_cast<std::int64_t>(v.peripheral_count), sp.lambda1_abs(), sp.gap(), ent,
                   mixing_threshold(d), suff.sufficient, suff.witness, mean_abs_indicator(sp),
                   cptp.min_choi_eigenvalue, cptp.trace_preservation_defect,
                   fp ? Cell{fp->residual} : Cell{}});
  r.tables.push_back(std::move(summary));

  Table spec = spectrum_table();
  add_spectrum_rows(spec, Cell{}, std::int64_t{0}, sp.values);
  r.tables.push_back(std::move(spec));

  if (fp) {
    Table fixed("fixed_point", {"row", "col", "re", "im"});
    const ComplexMatrix& m = fp->state.matrix();
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        fixed.add_row({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), m(i, j).real(),
                       m(i, j).imag()});
    r.tables.push_back(std::move(fixed));
  }
  emit(r, c, out);
  return kExitOk;
}

// ---- weyl -----------------------------------------------------------------

WeylPoint parse_point(const std::string& s) {
  if (s == "local") return gates::local_point();
  if (s == "cnot") return gates::cnot_point();
  if (s == "dcnot") return gates::dcnot_point();
  if (s == "swap") return gates::swap_point();
  std::vector<double> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--point expects x,y,z or a named point, got '" + s + "'");
    }
  }
  if (xs.size() != 3) throw ValidationError("--point expects three coordinates, got '" + s + "'");
  return make_weyl_point(xs[0], xs[1], xs[2]);
}

int cmd_weyl(const WeylArgs& a, const CommonArgs& c, std::ostream& out) {
  const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_analytic);
  if (a.point.empty() == a.line.empty()) {
    throw ValidationError("weyl requires exactly one of --point or --line");
  }
  std::vector<WeylLinePoint> pts;
  Report r;
  base_metadata(r, "weyl", eps);
  r.meta("convention.weyl", "U = exp(-i(x XX + y YY + z ZZ)), sigma = I/2");
  if (!a.point.empty()) {
    pts.push_back(evaluate_weyl_point(parse_point(a.point), eps));
    r.meta("point", a.point);
  } else {
    const WeylLine line = parse_weyl_line(a.line);
    const auto [start, end] = weyl_line_endpoints(line);
    pts = weyl_line(start, end, a.steps, eps);
    r.meta("line", std::string(to_string(line)));
    r.meta("steps", std::to_string(a.steps));
  }

  Table t("weyl", {"step", "x", "y", "z", "label", "ergodic", "mixing", "unit_count",
                   "peripheral_count", "analytic_1", "analytic_2", "analytic_3", "lambda1_abs",
                   "gap", "op_ent", "e_star", "sufficient", "analytic_deviation"});
  Table spec = spectrum_table();
  const double e_star = mixing_threshold(2);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const auto step = static_cast<std::int64_t>(k);
    t.add_row({step, p.point.x, p.point.y, p.point.z, std::string(to_string(p.verdict.label)),
               p.verdict.ergodic(), p.verdict.mixing(),
               static_cast<std::int64_t>(p.verdict.unit_count),
               static_cast<std::int64_t>(p.verdict.peripheral_count), p.analytic[1], p.analytic[2],
               p.analytic[3], p.numeric.lambda1_abs(), p.numeric.gap(), p.entanglement, e_star,
               p.entanglement > e_star, p.analytic_deviation});
    add_spectrum_rows(spec, step, std::int64_t{0}, p.numeric.values);
  }
  r.tables.push_back(std::move(t));
  r.tables.push_back(std::move(spec));
  emit(r, c, out);
  return kExitOk;
}

// ---- many-body tables -----------------------------------------------------

// Returns false when any realization failed; failures are listed on err.
bool report_failures(const SweepResult& res, std::ostream& err) {
  bool ok = true;
  for (const auto& p : res.points) {
    if (p.ok) continue;
    ok = false;
    err << "error: point param_value=" << format_number(p.param_value) << " L=" << p.n_sites
        << " realization=" << p.realization << " failed: " << p.error << '\n';
  }
  return ok;
}

std::string mean_status(const EnsembleMean& m) {
  if (m.failures == 0) return "ok";
  return "failed " + std::to_string(m.failures) + " of " + std::to_string(m.count + m.failures);
}

Table scalar_table(const SweepResult& res, const Analyses& an) {
  const bool need_spectrum = an.spectrum || an.gap || an.delta_n || an.sff;
  Table t("scalars", {"param_value", "realization", "lambda1_abs", "gap", "op_ent", "e_star",
                      "sufficient", "mean_abs_indicator", "label", "L", "d", "status"});
  std::size_t idx = 0;
  for (const auto& m : res.means) {
    for (; idx < res.points.size() && res.points[idx].param_value == m.param_value &&
           res.points[idx].n_sites == m.n_sites;
         ++idx) {
      const auto& p = res.points[idx];
      const bool has_sp = p.ok && p.label.has_value();
      const bool has_ent = p.ok && p.op_ent.has_value();
      t.add_row({p.param_value, static_cast<std::int64_t>(p.realization),
                 has_sp ? Cell{p.lambda1_abs} : Cell{}, has_sp ? Cell{p.gap} : Cell{},
                 has_ent ? Cell{*p.op_ent} : Cell{}, p.e_star,
                 has_ent ? Cell{*p.op_ent > p.e_star} : Cell{},
                 has_sp ? Cell{p.mean_abs_indicator} : Cell{},
                 has_sp ? Cell{std::string(to_string(*p.label))} : Cell{},
                 static_cast<std::int64_t>(p.n_sites), static_cast<std::int64_t>(p.d),
                 p.ok ? std::string("ok") : "error: " + p.error});
    }
    const bool any_sp = need_spectrum && m.count > 0;
    t.add_row({m.param_value, std::string("mean"), any_sp ? Cell{m.lambda1_abs} : Cell{},
               any_sp ? Cell{m.gap} : Cell{}, opt_cell(m.op_ent), m.e_star,
               m.op_ent ? Cell{*m.op_ent > m.e_star} : Cell{},
               any_sp ? Cell{m.mean_abs_indicator} : Cell{}, Cell{},
               static_cast<std::int64_t>(m.n_sites), static_cast<std::int64_t>(m.d),
               mean_status(m)});
  }
  return t;
}

Table ensemble_table(const SweepResult& res) {
  Table t("ensemble", {"param_value", "L", "d", "count", "failures", "lambda1_abs_mean",
                       "lambda1_abs_se", "gap_mean", "gap_se", "op_ent_mean", "op_ent_se", "n_s",
                       "mean_channel_lambda1_abs"});
  for (const auto& m : res.means) {
    t.add_row({m.param_value, static_cast<std::int64_t>(m.n_sites), static_cast<std::int64_t>(m.d),
               static_cast<std::int64_t>(m.count), static_cast<std::int64_t>(m.failures),
               m.lambda1_abs, m.lambda1_abs_se, m.gap, m.gap_se, opt_cell(m.op_ent),
               opt_cell(m.op_ent_se), opt_cell(m.n_s), opt_cell(m.mean_channel_lambda1_abs)});
  }
  return t;
}

// Per-realization and mean series; start is the first n.
Table series_table(const SweepResult& res, const std::string& name, const std::string& column,
                   int start, std::vector<double> PointResult::*field,
                   std::vector<double> EnsembleMean::*mean_field,
                   std::vector<double> EnsembleMean::*se_field) {
  Table t(name, {"param_value", "realization", "n", column, column + "_se"});
  std::size_t idx = 0;
  for (const auto& m : res.means) {
    for (; idx < res.points.size() && res.points[idx].param_value == m.param_value &&
           res.points[idx].n_sites == m.n_sites;
         ++idx) {
      const auto& p = res.points[idx];
      const auto& xs = p.*field;
      for (std::size_t n = 0; n < xs.size(); ++n)
        t.add_row({p.param_value, static_cast<std::int64_t>(p.realization),
                   static_cast<std::int64_t>(n) + start, xs[n], Cell{}});
    }
    const auto& xs = m.*mean_field;
    const auto& se = m.*se_field;
    for (std::size_t n = 0; n < xs.size(); ++n)
      t.add_row({m.param_value, std::string("mean"), static_cast<std::int64_t>(n) + start, xs[n],
                 se[n]});
  }
  return t;
}

Table scrambling_table(const SweepResult& res) {
  Table t("scrambling", {"param_value", "realization", "n_s", "inv_d", "L", "d"});
  std::size_t idx = 0;
  for (const auto& m : res.means) {
    for (; idx < res.points.size() && res.points[idx].param_value == m.param_value &&
           res.points[idx].n_sites == m.n_sites;
         ++idx) {
      const auto& p = res.points[idx];
      if (!p.ok) continue;
      t.add_row({p.param_value, static_cast<std::int64_t>(p.realization), opt_cell(p.n_s),
                 1.0 / static_cast<double>(p.d), static_cast<std::int64_t>(p.n_sites),
                 static_cast<std::int64_t>(p.d)});
    }
    t.add_row({m.param_value, std::string("mean"), opt_cell(m.n_s), 1.0 / static_cast<double>(m.d),
               static_cast<std::int64_t>(m.n_sites), static_cast<std::int64_t>(m.d)});
  }
  return t;
}

void add_sweep_tables(Report& r, const SweepResult& res, const Analyses& an) {
  r.tables.push_back(scalar_table(res, an));
  r.tables.push_back(ensemble_table(res));
  if (an.spectrum) {
    Table spec = spectrum_table();
    for (const auto& p : res.points)
      if (p.ok) add_spectrum_rows(spec, p.param_value, static_cast<std::int64_t>(p.realization),
                                  p.eigenvalues);
    r.tables.push_back(std::move(spec));
  }
  if (an.delta_n) {
    r.tables.push_back(series_table(res, "delta_n", "delta_n", 0, &PointResult::delta_n,
                                    &EnsembleMean::delta_n, &EnsembleMean::delta_n_se));
  }
  if (an.sff) {
    r.tables.push_back(series_table(res, "sff", "K_n", 1, &PointResult::k, &EnsembleMean::k,
                                    &EnsembleMean::k_se));
    r.tables.push_back(scrambling_table(res));
  }
}

std::optional<DensityMatrix> model_initial_state(const std::string& state, const ManyBodySpec& s) {
  if (state.empty() || state == "neel") return std::nullopt;
  return load_state(state, s.system_dim());
}

int cmd_manybody(const ModelArgs& m, const ManyBodyArgs& a, const CommonArgs& c, std::ostream& out,
                 std::ostream& err) {
  const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_manybody);
  require_positive(c.workers, "--workers");
  const ManyBodySpec spec = to_spec(m);
  SweepOptions opts;
  opts.analyses = parse_analyses(a.analyses);
  opts.n_max = a.n_max;
  if (opts.analyses.delta_n || opts.analyses.sff) require_positive(a.n_max, "--n-max");
  opts.workers = c.workers;
  opts.epsilon = eps;
  opts.mean_channel = a.mean_channel;
  opts.initial_state = model_initial_state(a.state, spec);

  const SweepResult res = run_sweep(spec, opts);
  Report r;
  base_metadata(r, "manybody", eps);
  model_metadata(r, spec);
  r.meta("analyses", a.analyses);
  if (opts.analyses.delta_n) r.meta("initial_state", a.state);
  r.meta("param", "h");
  add_sweep_tables(r, res, opts.analyses);
  emit(r, c, out);
  return report_failures(res, err) ? kExitOk : kExitNumerical;
}

// ---- iterate / sff ----------------------------------------------------------

int cmd_iterate(const ModelArgs& m, bool model_given, const IterateArgs& a, const CommonArgs& c,
                std::ostream& out, std::ostream& err) {
  require_positive(a.n_max, "--n-max");
  const bool dilation = !a.input.unitary.empty();
  if (dilation == model_given) {
    throw ValidationError("iterate requires exactly one of --unitary or --model");
  }
  Report r;
  if (dilation) {
    const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_analytic);
    const DilationInput in = load_dilation(a.input);
    const std::string state = a.state.empty() ? "zero" : a.state;
    const DensityMatrix rho0 = load_state(state, in.channel.dim());
    const std::vector<double> deltas = iterate_convergence(in.channel, rho0, a.n_max, eps);
    base_metadata(r, "iterate", eps);
    dilation_metadata(r, a.input, in.channel.dim());
    r.meta("initial_state", state);
    Table t("delta_n", {"n", "delta_n"});
    for (std::size_t n = 0; n < deltas.size(); ++n)
      t.add_row({static_cast<std::int64_t>(n), deltas[n]});
    r.tables.push_back(std::move(t));
    emit(r, c, out);
    return kExitOk;
  }

  const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_manybody);
  require_positive(c.workers, "--workers");
  const ManyBodySpec spec = to_spec(m);
  SweepOptions opts;
  opts.analyses.delta_n = true;
  opts.n_max = a.n_max;
  opts.workers = c.workers;
  opts.epsilon = eps;
  const std::string state = a.state.empty() ? "neel" : a.state;
  opts.initial_state = model_initial_state(state, spec);
  const SweepResult res = run_sweep(spec, opts);

  base_metadata(r, "iterate", eps);
  model_metadata(r, spec);
  r.meta("initial_state", state);
  const EnsembleMean& mean = res.means.front();
  r.meta("averaged_over", std::to_string(mean.count));
  Table t("delta_n", {"n", "delta_n", "delta_n_se"});
  for (std::size_t n = 0; n < mean.delta_n.size(); ++n)
    t.add_row({static_cast<std::int64_t>(n), mean.delta_n[n], mean.delta_n_se[n]});
  r.tables.push_back(std::move(t));
  emit(r, c, out);
  return report_failures(res, err) ? kExitOk : kExitNumerical;
}

int cmd_sff(const ModelArgs& m, bool model_given, const SffArgs& a, const CommonArgs& c,
            std::ostream& out, std::ostream& err) {
  require_positive(a.n_max, "--n-max");
  const bool dilation = !a.input.unitary.empty();
  if (dilation == model_given) {
    throw ValidationError("sff requires exactly one of --unitary or --model");
  }
  Report r;
  std::vector<double> k, k_se;
  std::optional<int> n_s;
  Index d = 0;
  bool ok = true;
  if (dilation) {
    const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_analytic);
    const DilationInput in = load_dilation(a.input);
    d = in.channel.dim();
    const FormFactor ff = generalized_sff(in.channel, a.n_max);
    k = ff.k;
    n_s = scrambling_time(k, d);
    base_metadata(r, "sff", eps);
    dilation_metadata(r, a.input, d);
  } else {
    const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_manybody);
    require_positive(c.workers, "--workers");
    const ManyBodySpec spec = to_spec(m);
    SweepOptions opts;
    opts.analyses.sff = true;
    opts.n_max = a.n_max;
    opts.workers = c.workers;
    opts.epsilon = eps;
    const SweepResult res = run_sweep(spec, opts);
    ok = report_failures(res, err);
    const EnsembleMean& mean = res.means.front();
    d = mean.d;
    k = mean.k;
    k_se = mean.k_se;
    n_s = mean.n_s;
    base_metadata(r, "sff", eps);
    model_metadata(r, spec);
    r.meta("averaged_over", std::to_string(mean.count));
  }
  Table t("sff", {"n", "K_n", "K_n_se"});
  for (std::size_t n = 0; n < k.size(); ++n)
    t.add_row({static_cast<std::int64_t>(n + 1), k[n], k_se.empty() ? Cell{0.0} : Cell{k_se[n]}});
  r.tables.push_back(std::move(t));
  Table s("scrambling", {"n_s", "inv_d", "d"});
  s.add_row({opt_cell(n_s), 1.0 / static_cast<double>(d), static_cast<std::int64_t>(d)});
  r.tables.push_back(std::move(s));
  emit(r, c, out);
  return ok ? kExitOk : kExitNumerical;
}

// ---- sweep ------------------------------------------------------------------

std::vector<double> sweep_values(const SweepArgs& a) {
  if (!a.values.empty()) {
    if (a.from || a.to || a.steps != 0) {
      throw ValidationError("use either --values or --from/--to/--steps");
    }
    return a.values;
  }
  if (!a.from || !a.to) throw ValidationError("sweep requires --values or --from and --to");
  if (a.steps < 1) throw ValidationError("--steps must be at least 1");
  if (a.steps == 1) {
    if (*a.from != *a.to) throw ValidationError("--steps 1 requires --from equal to --to");
    return {*a.from};
  }
  std::vector<double> v;
  for (int i = 0; i < a.steps; ++i) {
    v.push_back(*a.from + (*a.to - *a.from) * static_cast<double>(i) / (a.steps - 1));
  }
  return v;
}

int cmd_sweep(const ModelArgs& m, const SweepArgs& a, const CommonArgs& c, std::ostream& out,
              std::ostream& err) {
  const double eps = resolve_epsilon(c.epsilon, kTolerances.classify_manybody);
  require_positive(c.workers, "--workers");
  const ManyBodySpec spec = to_spec(m);
  SweepOptions opts;
  opts.parameter = parse_sweep_parameter(a.param);
  opts.values = sweep_values(a);
  opts.analyses = parse_analyses(a.analyses);
  opts.n_max = a.n_max;
  if (opts.analyses.delta_n || opts.analyses.sff) require_positive(a.n_max, "--n-max");
  opts.workers = c.workers;
  opts.epsilon = eps;
  opts.mean_channel = a.mean_channel;

  const SweepResult res = run_sweep(spec, opts);
  Report r;
  base_metadata(r, "sweep", eps);
  model_metadata(r, spec);
  r.meta("param", a.param);
  r.meta("analyses", a.analyses);
  add_sweep_tables(r, res, opts.analyses);
  emit(r, c, out);
  return report_failures(res, err) ? kExitOk : kExitNumerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ergodicity and mixing analysis of quantum channels from bipartite unitaries",
               "qergo"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonArgs common;
  common.workers = default_worker_count();
  ModelArgs model;

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Classify the channel of a dilation unitary");
  add_channel_input(classify_cmd, classify_args.input);
  add_common(classify_cmd, common);

  WeylArgs weyl_args;
  auto* weyl_cmd = app.add_subcommand("weyl", "Two-qubit Weyl-chamber channels");
  weyl_cmd->add_option("--point", weyl_args.point, "x,y,z or one of local, cnot, dcnot, swap");
  weyl_cmd->add_option("--line", weyl_args.line,
                       "local-cnot, cnot-dcnot, dcnot-swap, local-dcnot or local-swap");
  weyl_cmd->add_option("--steps", weyl_args.steps, "Points along the line, endpoints included")
      ->capture_default_str();
  add_common(weyl_cmd, common);

  ManyBodyArgs mb_args;
  auto* mb_cmd = app.add_subcommand("manybody", "Many-body channel analyses (SR or SYK)");
  add_model(mb_cmd, model, true);
  mb_cmd->add_option("--analyses", mb_args.analyses,
                     "Comma list of spectrum, gap, entanglement, delta_n, sff")
      ->capture_default_str();
  mb_cmd->add_option("--n-max", mb_args.n_max, "Iterations for delta_n and sff")
      ->capture_default_str();
  mb_cmd->add_option("--state", mb_args.state,
                     "Initial state for delta_n: neel, maximally-mixed, zero or a matrix file")
      ->capture_default_str();
  mb_cmd->add_flag("--mean-channel", mb_args.mean_channel,
                   "SYK: also report |lambda_1| of the realization-averaged channel");
  add_common(mb_cmd, common);

  IterateArgs it_args;
  auto* it_cmd = app.add_subcommand("iterate", "Distance to the fixed point under iteration");
  add_channel_input(it_cmd, it_args.input);
  add_model(it_cmd, model, false);
  it_cmd->add_option("--n-max", it_args.n_max, "Largest n")->capture_default_str();
  it_cmd->add_option("--state", it_args.state,
                     "neel (model default), zero (dilation default), maximally-mixed or a file");
  add_common(it_cmd, common);

  SffArgs sff_args;
  auto* sff_cmd = app.add_subcommand("sff", "Generalized spectral form factor and scrambling time");
  add_channel_input(sff_cmd, sff_args.input);
  add_model(sff_cmd, model, false);
  sff_cmd->add_option("--n-max", sff_args.n_max, "Largest n")->capture_default_str();
  add_common(sff_cmd, common);

  SweepArgs sw_args;
  auto* sw_cmd = app.add_subcommand("sweep", "Sweep h or L for a many-body model");
  add_model(sw_cmd, model, true);
  sw_cmd->add_option("--param", sw_args.param, "h or L")->capture_default_str();
  sw_cmd->add_option("--from", sw_args.from, "First value");
  sw_cmd->add_option("--to", sw_args.to, "Last value");
  sw_cmd->add_option("--steps", sw_args.steps, "Number of evenly spaced values");
  sw_cmd->add_option("--values", sw_args.values, "Explicit value list")->delimiter(',');
  sw_cmd->add_option("--analyses", sw_args.analyses,
                     "Comma list of spectrum, gap, entanglement, delta_n, sff")
      ->capture_default_str();
  sw_cmd->add_option("--n-max", sw_args.n_max, "Iterations for delta_n and sff")
      ->capture_default_str();
  sw_cmd->add_flag("--mean-channel", sw_args.mean_channel,
                   "SYK: also report |lambda_1| of the realization-averaged channel");
  add_common(sw_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::Success&) {
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*classify_cmd) return cmd_classify(classify_args, common, out);
    if (*weyl_cmd) return cmd_weyl(weyl_args, common, out);
    if (*mb_cmd) return cmd_manybody(model, mb_args, common, out, err);
    if (*it_cmd) return cmd_iterate(model, it_cmd->count("--model") > 0, it_args, common, out, err);
    if (*sff_cmd) return cmd_sff(model, sff_cmd->count("--model") > 0, sff_args, common, out, err);
    if (*sw_cmd) return cmd_sweep(model, sw_args, common, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NonUniqueFixedPointError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  err << "error: no subcommand given\n";
  return kExitValidation;
}

}  // namespace qergo::cli
