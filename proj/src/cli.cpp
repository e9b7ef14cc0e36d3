#include "bellquench/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellquench/bell.hpp"
#include "bellquench/dynamics.hpp"
#include "bellquench/fit.hpp"
#include "bellquench/io.hpp"
#include "bellquench/model.hpp"
#include "bellquench/momentum.hpp"
#include "bellquench/oracle.hpp"
#include "bellquench/parallel.hpp"
#include "bellquench/sweep.hpp"

namespace bellquench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kOracleTolerance = 1e-6;
constexpr double kSpectrumTolerance = 1e-8;
constexpr double kXStateTolerance = 1e-10;

KeySpec key(std::string name, ValueType type, std::string def, std::string help) {
  KeySpec s;
  s.key = std::move(name);
  s.type = type;
  s.default_value = std::move(def);
  s.help = std::move(help);
  return s;
}

KeySpec choice(std::string name, std::vector<std::string> options, std::string help) {
  KeySpec s = key(std::move(name), ValueType::Choice, options.front(), std::move(help));
  s.choices = std::move(options);
  return s;
}

KeySpec optional_real(std::string name, std::string help) {
  KeySpec s = key(std::move(name), ValueType::Real, "", std::move(help));
  s.optional = true;
  return s;
}

KeySpec plumbing(std::string name, ValueType type, std::string def, std::string help) {
  KeySpec s = key(std::move(name), type, std::move(def), std::move(help));
  s.echo = false;
  return s;
}

std::vector<KeySpec> model_keys(const std::string& n_default) {
  return {
      key("n", ValueType::Int, n_default, "chain length N (even)"),
      key("j", ValueType::Real, "1", "coupling strength J"),
      key("gamma", ValueType::Real, "1", "anisotropy in [0, 1]"),
      key("alpha", ValueType::Real, "10", "fall-off exponent (fixed for field quenches)"),
      key("h", ValueType::Real, "0", "field (fixed for coupling quenches)"),
  };
}

std::vector<KeySpec> quench_keys(const std::string& t_max) {
  return {
      choice("kind", {"field", "coupling"}, "quenched parameter"),
      key("q_i", ValueType::Real, "", "pre-quench value of the quenched parameter"),
      key("q_f", ValueType::Real, "", "post-quench value of the quenched parameter"),
      key("t_max", ValueType::Real, t_max, "final time"),
      key("dt", ValueType::Real, "0.1", "time step"),
  };
}

std::vector<KeySpec> grid_keys() {
  return {
      optional_real("q_min", "grid start (default by kind)"),
      optional_real("q_max", "grid end (default by kind)"),
      optional_real("step", "grid spacing (default 0.01)"),
  };
}

KeySpec output_key() { return plumbing("output", ValueType::Text, "out", "output directory"); }
KeySpec workers_key() { return plumbing("workers", ValueType::Int, "0", "worker threads, 0 = all"); }

template <typename... Lists>
std::vector<KeySpec> concat(Lists... lists) {
  std::vector<KeySpec> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  return out;
}

QuenchKind kind_of(const RunConfig& c) {
  return c.get_text("kind") == "coupling" ? QuenchKind::Coupling : QuenchKind::Field;
}

ModelParams model_of(const RunConfig& c) {
  ModelParams p;
  const long n = c.get_int("n");
  require(n > 0 && n <= 1 << 20, "N out of range: " + std::to_string(n));
  p.n = static_cast<int>(n);
  p.j = c.get_real("j");
  p.gamma = c.get_real("gamma");
  p.alpha = c.get_real("alpha");
  p.h = c.get_real("h");
  p.validate();
  return p;
}

QuenchSpec quench_of(const RunConfig& c) {
  const auto base = model_of(c);
  const double qi = c.get_real("q_i");
  const double qf = c.get_real("q_f");
  auto q = kind_of(c) == QuenchKind::Field ? QuenchSpec::field(base, qi, qf) : QuenchSpec::coupling(base, qi, qf);
  q.validate();
  return q;
}

TimeGrid time_grid_of(const RunConfig& c) {
  TimeGrid g{c.get_real("t_max"), c.get_real("dt")};
  g.validate();
  return g;
}

GridSpec grid_of(const RunConfig& c, QuenchKind kind) {
  GridSpec g = kind == QuenchKind::Field ? GridSpec::field_default() : GridSpec::coupling_default();
  if (c.has("q_min")) g.q_min = c.get_real("q_min");
  if (c.has("q_max")) g.q_max = c.get_real("q_max");
  if (c.has("step")) g.step = c.get_real("step");
  g.validate();
  return g;
}

int workers_of(const RunConfig& c) {
  const long w = c.get_int("workers");
  require(w >= 0 && w <= 4096, "workers must lie in [0, 4096]");
  return static_cast<int>(w);
}

// Collects outputs, then writes them together with the manifest.
class RunWriter {
 public:
  explicit RunWriter(const RunConfig& config) : config_(config), dir_(config.get_text("output")) {}

  void add(const std::string& name, std::string content) { files_[name] = std::move(content); }
  json& derived() { return derived_; }

  void commit(std::ostream& out, double seconds, int workers) {
    json outputs = json::object();
    for (const auto& [name, content] : files_) {
      io::write_text_file(dir_ / name, content);
      outputs[name] = io::sha256_hex(content);
    }
    json manifest = {
        {"schema_version", kSchemaVersion},
        {"tool", kToolName},
        {"version", kToolVersion},
        {"command", config_.command()},
        {"config", config_.echo()},
        {"outputs", outputs},
        {"derived", derived_},
    };
    io::write_text_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
    json timing = {{"wall_seconds", seconds}, {"workers", resolve_workers(workers)}};
    io::write_text_file(dir_ / "timing.json", timing.dump(2) + "\n");
    out << "wrote " << (files_.size() + 2) << " files to " << dir_.string() << "\n";
  }

 private:
  const RunConfig& config_;
  fs::path dir_;
  std::map<std::string, std::string> files_;
  json derived_ = json::object();
};

const std::vector<std::string> kSeriesHeader = {"t", "mz", "cxx", "cyy", "czz", "cxy", "cyx", "bell", "logneg"};

std::vector<double> series_row(double t, const CorrelatorSet& c, double logneg) {
  return {t, c.mz, c.cxx, c.cyy, c.czz, c.cxy, c.cyx, bell_value(c), logneg};
}

json correlators_json(const CorrelatorSet& c) {
  return {{"mz", c.mz}, {"cxx", c.cxx}, {"cyy", c.cyy}, {"czz", c.czz}, {"cxy", c.cxy}, {"cyx", c.cyx}};
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void cmd_evolve(const RunConfig& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto quench = quench_of(c);
  const auto grid = time_grid_of(c);
  const QuenchEvolver evolver(quench);

  std::vector<CorrelatorSet> series;
  io::CsvWriter csv(kSeriesHeader);
  for (double t : grid.samples()) {
    series.push_back(evolver.at(t));
    csv.row(series_row(t, series.back(), log_negativity(series.back())));
  }
  const auto steady = evolver.steady();

  RunWriter w(c);
  w.add("evolve.csv", csv.str());
  w.derived() = {
      {"b_s", bell_value(steady.correlators)},
      {"b_avg", bell_time_average(series)},
      {"steady", correlators_json(steady.correlators)},
      {"degenerate_modes", steady.degenerate_modes},
      {"same_phase", classify_quench(quench.kind, quench.kind == QuenchKind::Field ? quench.initial.alpha : quench.initial.h,
                                     quench.q_initial(), quench.q_final())
                         .same},
  };
  w.commit(out, elapsed(start), 1);
}

std::vector<Quantifier> quantifiers_of(const RunConfig& c) {
  std::vector<Quantifier> out;
  std::stringstream ss(c.get_text("quantifiers"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    bool found = false;
    for (auto q : {Quantifier::Bell, Quantifier::Entanglement, Quantifier::Czz}) {
      if (item == quantifier_name(q)) {
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
        found = true;
      }
    }
    if (!found) fail(ErrorKind::Config, "quantifiers: unknown quantifier '" + item + "' (bell, entanglement, czz)");
  }
  if (out.empty()) fail(ErrorKind::Config, "quantifiers: at least one quantifier is required");
  return out;
}

std::string matrix_csv(const GridSpec& grid, const std::function<double(int, int)>& cell) {
  std::vector<std::string> header{"q_i"};
  const auto pts = grid.points();
  for (double q : pts) header.push_back(io::format_double(q));
  io::CsvWriter csv(header);
  std::vector<double> row(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) row[j] = cell(static_cast<int>(i), static_cast<int>(j));
    csv.row(io::format_double(pts[i]), row);
  }
  return csv.str();
}

void cmd_sweep(const RunConfig& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto kind = kind_of(c);
  const auto fixed = model_of(c);
  const auto grid = grid_of(c, kind);
  const auto quantifiers = quantifiers_of(c);
  const auto rule = c.get_text("detection") == "strict" ? Detection::Strict : Detection::Inclusive;
  SweepOptions opts;
  opts.workers = workers_of(c);
  opts.czz_magnitude = c.get_bool("czz_magnitude");

  const auto result = sweep_all(kind, fixed, grid, opts);

  RunWriter w(c);
  io::CsvWriter axis({"index", "q"});
  const auto pts = grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) axis.row({static_cast<double>(i), pts[i]});
  w.add("axis.csv", axis.str());
  const auto& any = result.bell;
  w.add("same_phase.csv", matrix_csv(grid, [&](int i, int j) { return any.same(i, j) ? 1.0 : 0.0; }));

  json thresholds = json::object();
  for (auto q : quantifiers) {
    const auto& d = result.get(q);
    w.add(std::string(quantifier_name(q)) + ".csv", matrix_csv(grid, [&](int i, int j) { return d.value(i, j); }));
    const double qc = critical_threshold(d);
    const auto report = efficiency(d, qc, rule);
    thresholds[quantifier_name(q)] = {
        {"q_c", report.q_c},
        {"eta", report.eta},
        {"area_detected", report.area_detected},
        {"area_same", report.area_same},
        {"analytic_area", report.analytic_area},
        {"n_cross_cells", report.n_cross_cells},
        {"n_same_cells", report.n_same_cells},
        {"n_detected_cells", report.n_detected_cells},
    };
  }
  w.derived() = {
      {"grid_points", grid.count()},
      {"degenerate_cells", result.degenerate_cells},
      {"quantifiers", thresholds},
  };
  w.commit(out, elapsed(start), opts.workers);
}

void cmd_threshold_curve(const RunConfig& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto kind = kind_of(c);
  const auto base = model_of(c);
  const auto grid = grid_of(c, kind);
  const auto& values = c.get_list("values");
  SweepOptions opts;
  opts.workers = workers_of(c);

  const auto curve = kind == QuenchKind::Field ? threshold_curve(base, values, grid, opts)
                                               : threshold_curve_coupling(base, values, grid, opts);
  const std::string xname = kind == QuenchKind::Field ? "alpha" : "h";
  io::CsvWriter csv({xname, "b_c"});
  json points = json::array();
  for (const auto& p : curve) {
    csv.row({p.x, p.b_c});
    points.push_back({{xname, p.x}, {"b_c", p.b_c}});
  }
  RunWriter w(c);
  w.add("threshold_curve.csv", csv.str());
  w.derived() = {{"points", points}};
  w.commit(out, elapsed(start), opts.workers);
}

std::vector<DataPoint> load_points(const std::string& path) {
  const auto table = io::parse_numeric_csv(io::read_text_file(path), path);
  if (table.header.size() < 2) fail(ErrorKind::Parse, path + ": expected at least two columns (x, y)");
  std::vector<DataPoint> pts;
  pts.reserve(table.rows.size());
  for (const auto& r : table.rows) pts.push_back({r[0], r[1]});
  return pts;
}

void cmd_fit(const RunConfig& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string input = c.get_text("input");
  const auto pts = load_points(input);
  FitOptions opts;
  const long seed = c.get_int("seed");
  const long extra = c.get_int("extra_starts");
  require(seed >= 0, "seed must be non-negative");
  require(extra >= 0 && extra <= 10000, "extra_starts must lie in [0, 10000]");
  opts.seed = static_cast<std::uint64_t>(seed);
  opts.extra_starts = static_cast<int>(extra);

  json fit;
  if (c.get_text("model") == "gaussian") {
    const auto g = fit_gaussian(pts, opts);
    fit = {{"model", "gaussian"}, {"a", g.a},   {"b", g.b},         {"c", g.c},
           {"r_squared", g.r_squared}, {"rss", g.rss}, {"starts", g.starts}};
  } else {
    const auto g = fit_trigaussian(pts, opts);
    json comps = json::array();
    for (const auto& k : g.components) comps.push_back({{"amplitude", k.amplitude}, {"mu", k.mu}, {"sigma", k.sigma}});
    double lo = pts.front().y, hi = pts.front().y;
    for (const auto& p : pts) {
      lo = std::min(lo, p.y);
      hi = std::max(hi, p.y);
    }
    const double rms = std::sqrt(g.rss / static_cast<double>(pts.size()));
    fit = {{"model", "trigaussian"},  {"components", comps},
           {"r_squared", g.r_squared}, {"rss", g.rss},
           {"rms", rms},               {"rms_over_range", hi > lo ? rms / (hi - lo) : 0.0},
           {"sigma_floor", g.sigma_floor}, {"low_confidence", g.low_confidence},
           {"starts", g.starts}};
  }
  fit["points"] = pts.size();

  RunWriter w(c);
  w.add("fit.json", fit.dump(2) + "\n");
  w.derived() = {{"fit", fit}, {"input_sha256", io::sha256_hex(io::read_text_file(input))}};
  w.commit(out, elapsed(start), 1);
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double correlator_gap(const CorrelatorSet& a, const CorrelatorSet& b) {
  return std::max({std::abs(a.mz - b.mz), std::abs(a.cxx - b.cxx), std::abs(a.cyy - b.cyy), std::abs(a.czz - b.czz),
                   std::abs(a.cxy - b.cxy), std::abs(a.cyx - b.cyx)});
}

double off_x_magnitude(const Eigen::Matrix4cd& rho) {
  double m = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) {
      if (r == col || r + col == 3) continue;
      m = std::max(m, std::abs(rho(r, col)));
    }
  }
  return m;
}

json check(double deviation, double tolerance) {
  return {{"max_deviation", deviation}, {"tolerance", tolerance}, {"pass", deviation <= tolerance}};
}

// Field term alone: eigenvalues must be integer multiples of h.
double zeeman_ladder_gap(const ModelParams& p) {
  auto coupled = build_spin_hamiltonian(p);
  auto no_field = p;
  no_field.h = 0.0;
  const Eigen::MatrixXd field = coupled.matrix - build_spin_hamiltonian(no_field).matrix;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(field, Eigen::EigenvaluesOnly);
  std::vector<double> expect;
  for (int k = 0; k <= p.n; ++k) {
    const double level = -p.h * (p.n / 2.0 - k);
    const auto copies = static_cast<long>(std::llround(std::tgamma(p.n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(p.n - k + 1.0))));
    for (long i = 0; i < copies; ++i) expect.push_back(level);
  }
  std::sort(expect.begin(), expect.end());
  const auto& ev = es.eigenvalues();
  return max_gap({ev.data(), ev.data() + ev.size()}, expect);
}

void cmd_oracle(const RunConfig& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto quench = quench_of(c);
  if (quench.initial.n > kOracleEvolveCap) {
    fail(ErrorKind::ResourceCap, "oracle evolution is capped at N = " + std::to_string(kOracleEvolveCap) + ", got N = " +
                                     std::to_string(quench.initial.n));
  }
  const auto grid = time_grid_of(c);
  const OracleQuench oracle(quench);
  const QuenchEvolver evolver(quench);

  io::CsvWriter csv(kSeriesHeader);
  double corr_dev = 0.0, bell_dev = 0.0, x_dev = 0.0;
  for (double t : grid.samples()) {
    const auto snap = oracle.snapshot(t);
    const auto fermion = evolver.at(t);
    corr_dev = std::max(corr_dev, correlator_gap(snap.correlators, fermion));
    bell_dev = std::max(bell_dev, std::abs(bell_value(snap.correlators) - bell_value(fermion)));
    x_dev = std::max(x_dev, off_x_magnitude(snap.rho12.rho));
    csv.row(series_row(t, snap.correlators, log_negativity(snap.rho12)));
  }
  const double spectrum_dev = max_gap(fermionic_spectrum(quench.quenched), dense_spectrum(quench.quenched));
  const double energy_dev = std::abs(oracle.initial_ground_energy() - ground_energy(quench.initial));
  const double ladder_dev = zeeman_ladder_gap(quench.quenched);

  json checks = {
      {"spectrum", check(spectrum_dev, kSpectrumTolerance)},
      {"ground_energy", check(energy_dev, kOracleTolerance)},
      {"correlators", check(corr_dev, kOracleTolerance)},
      {"bell", check(bell_dev, kOracleTolerance)},
      {"x_state", check(x_dev, kXStateTolerance)},
      {"zeeman_ladder", check(ladder_dev, kSpectrumTolerance)},
  };
  bool pass = true;
  for (const auto& [name, v] : checks.items()) pass = pass && v["pass"].get<bool>();
  json report = {{"n", quench.initial.n}, {"samples", grid.samples().size()}, {"checks", checks}, {"pass", pass}};

  RunWriter w(c);
  w.add("oracle_series.csv", csv.str());
  w.add("oracle_report.json", report.dump(2) + "\n");
  w.derived() = {{"pass", pass}};
  w.commit(out, elapsed(start), 1);
  if (!pass) fail(ErrorKind::InconsistentCorrelators, "oracle cross-validation failed; see oracle_report.json");
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Parse:
      return kExitIo;
    case ErrorKind::Config:
    case ErrorKind::InvalidArgument:
    case ErrorKind::OutOfRange:
      return kExitConfig;
    case ErrorKind::DegenerateGroundState:
    case ErrorKind::InconsistentCorrelators:
    case ErrorKind::ThresholdUndefined:
    case ErrorKind::FitFailed:
      return kExitNumerical;
    case ErrorKind::ResourceCap:
      return kExitResourceCap;
  }
  return kExitNumerical;
}

std::vector<std::string> commands() { return {"evolve", "sweep", "threshold-curve", "fit", "oracle"}; }

std::vector<KeySpec> schema_for(const std::string& command) {
  if (command == "evolve") return concat(model_keys("512"), quench_keys("400"), std::vector{output_key()});
  if (command == "oracle") return concat(model_keys("8"), quench_keys("20"), std::vector{output_key()});
  if (command == "sweep") {
    return concat(model_keys("512"), std::vector{choice("kind", {"field", "coupling"}, "quenched parameter")},
                  grid_keys(),
                  std::vector{
                      key("quantifiers", ValueType::Text, "bell,entanglement,czz", "comma-separated subset"),
                      key("czz_magnitude", ValueType::Bool, "false", "use |C^zz| for the czz threshold"),
                      choice("detection", {"inclusive", "strict"}, "threshold comparison"),
                      workers_key(),
                      output_key(),
                  });
  }
  if (command == "threshold-curve") {
    return concat(model_keys("512"), std::vector{choice("kind", {"field", "coupling"}, "quenched parameter")},
                  grid_keys(),
                  std::vector{
                      key("values", ValueType::RealList, "", "alpha values (field) or h values (coupling)"),
                      workers_key(),
                      output_key(),
                  });
  }
  if (command == "fit") {
    return {
        key("input", ValueType::Text, "", "threshold-curve CSV"),
        choice("model", {"gaussian", "trigaussian"}, "fit model"),
        key("seed", ValueType::Int, "0", "seed for extra starts"),
        key("extra_starts", ValueType::Int, "0", "jittered restarts beyond the fixed seeds"),
        output_key(),
    };
  }
  fail(ErrorKind::Config, "unknown command '" + command + "'");
}

void dispatch(const RunConfig& config, std::ostream& out) {
  const auto& cmd = config.command();
  if (cmd == "evolve") return cmd_evolve(config, out);
  if (cmd == "sweep") return cmd_sweep(config, out);
  if (cmd == "threshold-curve") return cmd_threshold_curve(config, out);
  if (cmd == "fit") return cmd_fit(config, out);
  if (cmd == "oracle") return cmd_oracle(config, out);
  fail(ErrorKind::Config, "unknown command '" + cmd + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell-correlator quench dynamics of the long-range XY chain"};
  // `--h` is the field, so help is long-form only.
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  struct Bound {
    CLI::App* app = nullptr;
    std::string config_path;
    std::vector<KeySpec> schema;
    std::map<std::string, std::string> flags;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Bound> bound;
  for (const auto& name : commands()) {
    auto& b = bound[name];
    b.schema = schema_for(name);
    b.app = app.add_subcommand(name);
    b.app->add_option("--config", b.config_path, "key = value configuration file");
    for (const auto& s : b.schema) b.options[s.key] = b.app->add_option("--" + s.key, b.flags[s.key], s.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    for (auto& [name, b] : bound) {
      if (!b.app->parsed()) continue;
      RunConfig config(name, b.schema);
      if (!b.config_path.empty()) config.load_file(b.config_path);
      config.apply_environment();
      for (const auto& [k, opt] : b.options) {
        if (opt->count() > 0) config.set(k, b.flags[k], "flag --" + k);
      }
      config.finalize();
      dispatch(config, out);
      return kExitOk;
    }
    err << "error: no command given\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{kToolName};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bellquench::cli
