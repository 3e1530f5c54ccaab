// Command-line front end. Every subcommand writes its CSV (and SVG when asked)
// into the output directory and prints a JSON summary on stdout.
//
// Exit status: 0 success, 1 domain/convergence/I-O failure, 2 usage or
// parameter error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "chemodde/chemodde.hpp"
#include "json.hpp"

using namespace chemodde;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<long> horizon;
  std::optional<double> tol;
  bool svg = false;
  double offset = 0.6;  // fig2
  double nn_E = 0.5;    // neither-nor
  long nn_r = 0;
  long nn_n_max = 5;
};

// Fixture parameters for the figures.
RunConfig fig1_config() {
  const PiecewiseLinear s0{{{0, 0.8}, {500, 0.8}, {1500, 0.05}}};
  ChemostatParams params{1.0 / 5.5, 5, UptakeFunction::monod(1.0, 1.0), InputSignal(s0)};
  RunOptions run;
  run.horizon = 3000;
  return {std::move(params), InitialHistory::constant(5, 0.25, 0.5), run};
}

RunConfig fig2_config(double offset) {
  ChemostatParams params{1.0 / 8.0, 5, UptakeFunction::monod(1.0, 1.0), InputSignal(Sinusoid{0.25, 500, offset})};
  RunOptions run;
  run.horizon = 3000;
  return {std::move(params), InitialHistory::constant(5, 0.5, 0.2), run};
}

class Runner {
 public:
  explicit Runner(Flags f) : flags_(std::move(f)) {}

  RunConfig config() const {
    if (flags_.config.empty()) throw UsageError("this subcommand needs --config PATH");
    return apply_overrides(load_config(flags_.config));
  }

  RunConfig apply_overrides(RunConfig cfg) const {
    if (flags_.horizon) cfg.run.horizon = *flags_.horizon;
    if (flags_.tol) cfg.run.tol = *flags_.tol;
    if (flags_.svg) cfg.run.emit_svg = true;
    if (cfg.run.horizon < 0) throw ParameterError("--horizon", "must be nonnegative");
    if (!(cfg.run.tol > 0.0)) throw ParameterError("--tol", "must be positive");
    return cfg;
  }

  // CHEMODDE_OUT beats --out, which beats run.out in the config.
  fs::path out_dir(const RunConfig& cfg) const {
    fs::path dir = ".";
    if (cfg.run.out_dir) dir = *cfg.run.out_dir;
    if (!flags_.out.empty()) dir = flags_.out;
    if (const char* env = std::getenv("CHEMODDE_OUT"); env && *env) dir = env;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
  }

  void write_csv(const io::SeriesBundle& b, const fs::path& path) {
    io::emit_csv(b, path);
    files_.push_back(path.string());
  }

  void write_svg(const io::SeriesBundle& b, const fs::path& path, const io::SvgOptions& opts) {
    io::emit_svg(b, path, opts);
    files_.push_back(path.string());
  }

  void print(ordered_json summary) const {
    summary["files"] = files_;
    std::cout << summary.dump(2) << "\n";
  }

  const Flags& flags() const { return flags_; }

 private:
  Flags flags_;
  std::vector<std::string> files_;
};

std::vector<long> range(long first, long last) {
  std::vector<long> t;
  for (long i = first; i <= last; ++i) t.push_back(i);
  return t;
}

std::vector<double> input_values(const ChemostatParams& p, long first, long last) {
  std::vector<double> v;
  for (long t = first; t <= last; ++t) v.push_back(p.input.value_at(t));
  return v;
}

std::vector<double> slice(const Series& s, long first, long last) {
  return {s.values().begin() + (first - s.first()), s.values().begin() + (last - s.first() + 1)};
}

WashoutSolution washout_for(const ChemostatParams& p, long horizon) {
  return p.input.period() ? washout_periodic(p, horizon) : washout_sequence(p, horizon);
}

ordered_json feasibility_json(const FeasibilityReport& f) {
  ordered_json j;
  j["hypothesis_pz"] = f.hypothesis_pz;
  j["pz_product"] = f.pz_product;
  j["z_sup"] = f.z_sup;
  if (f.initial_mass_ok) j["initial_mass_ok"] = *f.initial_mass_ok;
  j["initial_mass"] = f.initial_mass;
  j["z0"] = f.z0;
  return j;
}

ordered_json classification_json(const ClassificationReport& c) {
  ordered_json j;
  j["verdict"] = to_string(c.verdict);
  j["basis"] = to_string(c.basis);
  j["lower"] = c.lower;
  j["upper"] = c.upper;
  j["lower_margin"] = c.lower_margin;
  j["upper_margin"] = c.upper_margin;
  j["borderline"] = c.borderline;
  if (c.windows) {
    j["T"] = c.windows->window_min;
    j["horizon"] = c.windows->horizon;
    j["windows"] = c.windows->windows;
    j["lower_window"] = {c.windows->lower_t1, c.windows->lower_t2};
    j["upper_window"] = {c.windows->upper_t1, c.windows->upper_t2};
  }
  if (c.basis == Basis::PeriodicMean) j["phi_sweeps"] = c.phi_sweeps;
  j["note"] = c.note;
  return j;
}

// simulate bundle: t, s0, z, s, x, y, deficit on [0, horizon].
io::SeriesBundle simulate_bundle(const Trajectory& traj, const WashoutSolution& z) {
  const long h = traj.horizon();
  const auto d = conservation_deficit(traj, z);
  io::SeriesBundle b;
  b.index = range(0, h);
  std::vector<double> zv;
  for (long t = 0; t <= h; ++t) zv.push_back(z.at(t));
  b.columns = {{"s0", input_values(traj.params, 0, h)},
               {"z", zv},
               {"s", slice(traj.s, 0, h)},
               {"x", slice(traj.x, 0, h)},
               {"y", slice(traj.y, 0, h)},
               {"deficit", slice(d, 0, h)}};
  return b;
}

io::SeriesBundle figure_bundle(const Trajectory& traj) {
  const long h = traj.horizon();
  io::SeriesBundle b;
  b.index = range(0, h);
  b.columns = {{"s0", input_values(traj.params, 0, h)}, {"s", slice(traj.s, 0, h)}, {"x", slice(traj.x, 0, h)}};
  return b;
}

ordered_json run_summary(const std::string& cmd, const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cmd;
  j["E"] = cfg.params.E;
  j["r"] = cfg.params.r;
  j["uptake"] = cfg.params.uptake.describe();
  j["input"] = cfg.params.input.describe();
  j["horizon"] = cfg.run.horizon;
  return j;
}

void do_simulate(Runner& run, const RunConfig& cfg, const std::string& stem, const std::string& cmd) {
  const auto dir = run.out_dir(cfg);
  const auto z = washout_for(cfg.params, cfg.run.horizon);
  const auto traj = simulate(cfg.params, cfg.init, cfg.run.horizon, z);
  run.write_csv(simulate_bundle(traj, z), dir / (stem + ".csv"));
  if (cfg.run.emit_svg) run.write_svg(figure_bundle(traj), dir / (stem + ".svg"), {stem, std::nullopt, 800, 480});
  auto j = run_summary(cmd, cfg);
  j["deficit0"] = *traj.deficit0;
  j["feasibility"] = feasibility_json(check_positivity_preconditions(cfg.params, cfg.init, z));
  j["negative_s"] = traj.negative_s;
  if (traj.first_negative_s) j["first_negative_s"] = *traj.first_negative_s;
  j["final"] = {{"s", traj.s[cfg.run.horizon]}, {"x", traj.x[cfg.run.horizon]}};
  run.print(j);
}

void do_washout(Runner& run) {
  const auto cfg = run.config();
  const auto dir = run.out_dir(cfg);
  const auto z = washout_for(cfg.params, cfg.run.horizon);
  const long h = cfg.run.horizon;
  io::SeriesBundle b;
  b.index = range(0, h);
  std::vector<double> zv;
  for (long t = 0; t <= h; ++t) zv.push_back(z.at(t));
  b.columns = {{"s0", input_values(cfg.params, 0, h)}, {"z", zv}};
  run.write_csv(b, dir / "washout.csv");
  auto j = run_summary("washout", cfg);
  j["z_sup"] = z.z_sup;
  if (z.period) j["period"] = *z.period;
  j["tail_error_bound"] = z.tail_error_bound;
  run.print(j);
}

void do_exponents(Runner& run) {
  const auto cfg = run.config();
  const auto dir = run.out_dir(cfg);
  const long h = cfg.run.horizon;
  const long T = cfg.run.T.value_or(default_window(cfg.params.r));
  const auto z = washout_for(cfg.params, h);
  const auto cs = phi_sequence(cfg.params, z, h);
  const auto a = growth_sequence(cfg.params, z, cs.phi, h);
  const auto est = bohl_bounds(a, T, h);
  io::SeriesBundle b;
  b.index = range(0, h);
  std::vector<double> zv;
  for (long t = 0; t <= h; ++t) zv.push_back(z.at(t));
  b.columns = {{"z", zv}, {"phi", slice(cs.phi, 0, h)}, {"growth_factor", slice(a, 0, h)}};
  run.write_csv(b, dir / "exponents.csv");
  auto j = run_summary("exponents", cfg);
  j["lower"] = est.lower;
  j["upper"] = est.upper;
  j["T"] = est.window_min;
  j["windows"] = est.windows;
  j["cross_check_residual"] = cs.cross_check_residual;
  run.print(j);
}

io::SeriesBundle sliding_bundle(const RunConfig& cfg, Series* out_stat = nullptr) {
  const long h = cfg.run.horizon;
  const auto z = washout_for(cfg.params, h);
  const auto cs = phi_sequence(cfg.params, z, h);
  const auto stat = sliding_statistic(cfg.params, z, cs.phi, h);
  if (out_stat) *out_stat = stat;
  io::SeriesBundle b;
  b.index = range(0, h);
  b.columns = {{"sliding", slice(stat, 0, h)}};
  return b;
}

void do_sliding(Runner& run) {
  const auto cfg = run.config();
  const auto dir = run.out_dir(cfg);
  Series stat;
  const auto b = sliding_bundle(cfg, &stat);
  run.write_csv(b, dir / "sliding.csv");
  if (cfg.run.emit_svg) run.write_svg(b, dir / "sliding.svg", {"sliding statistic", 1.0, 800, 480});
  auto j = run_summary("sliding", cfg);
  j["final"] = stat[cfg.run.horizon];
  run.print(j);
}

ClassifyOptions classify_options(const RunConfig& cfg) {
  ClassifyOptions o;
  o.horizon = std::max(cfg.run.horizon, 2 * cfg.run.T.value_or(default_window(cfg.params.r)) + cfg.params.r + 2);
  o.T = cfg.run.T;
  return o;
}

void do_classify(Runner& run) {
  const auto cfg = run.config();
  auto j = run_summary("classify", cfg);
  const auto z = washout_for(cfg.params, cfg.run.horizon);
  j["feasibility"] = feasibility_json(check_positivity_preconditions(cfg.params, cfg.init, z));
  j["classification"] = classification_json(classify(cfg.params, classify_options(cfg)));
  run.print(j);
}

ordered_json orbit_json(const OrbitResult& res, Runner& run, const fs::path& csv) {
  ordered_json j;
  if (const auto* orb = std::get_if<PeriodicOrbit>(&res)) {
    j["kind"] = "positive orbit";
    j["period"] = orb->period;
    j["min_x"] = orb->delta;
    j["residual"] = orb->residual;
    j["closure_residual"] = orb->closure_residual;
    j["periods_used"] = orb->periods_used;
    io::SeriesBundle b;
    b.index_name = "phase";
    b.index = range(0, orb->period - 1);
    b.columns = {{"s", orb->s}, {"x", orb->x}};
    run.write_csv(b, csv);
  } else {
    const auto& wc = std::get<WashoutConvergence>(res);
    j["kind"] = "washout";
    j["periods_used"] = wc.periods_used;
    j["final_max_x"] = wc.final_max_x;
    io::SeriesBundle b;
    b.index_name = "phase";
    b.index = range(0, static_cast<long>(wc.washout.profile.size()) - 1);
    b.columns = {{"z", wc.washout.profile}};
    run.write_csv(b, csv);
  }
  return j;
}

void do_periodic(Runner& run) {
  const auto cfg = run.config();
  const auto dir = run.out_dir(cfg);
  auto j = run_summary("periodic", cfg);
  OrbitOptions opts;
  opts.tol = cfg.run.tol;
  j["orbit"] = orbit_json(find_periodic_orbit(cfg.params, cfg.init, opts), run, dir / "orbit.csv");
  run.print(j);
}

void do_neither_nor(Runner& run) {
  const auto& f = run.flags();
  RunConfig placeholder = fig2_config(0.6);
  placeholder = run.apply_overrides(placeholder);
  const auto dir = run.out_dir(placeholder);
  const auto rep = neither_nor_demo(f.nn_E, f.nn_r, f.nn_n_max);
  ordered_json j;
  j["command"] = "neither-nor";
  j["E"] = rep.E;
  j["r"] = rep.r;
  j["n_max"] = rep.n_max;
  j["horizon"] = rep.horizon;
  j["bound"] = rep.bound;
  j["x_at_block_end"] = rep.x_at_block_end;
  j["low_block_min"] = rep.low_block_min;
  j["check_bound"] = rep.check_bound;
  j["check_low_block_decreasing"] = rep.check_low_block_decreasing;
  j["check_inconclusive"] = rep.check_inconclusive;
  j["feasibility"] = feasibility_json(rep.feasibility);
  if (rep.first_negative_s) j["first_negative_s"] = *rep.first_negative_s;
  if (rep.first_nonfinite_x) j["first_nonfinite_x"] = *rep.first_nonfinite_x;
  j["classification"] = classification_json(rep.classification);
  if (rep.trajectory) {
    const auto b = figure_bundle(*rep.trajectory);
    run.write_csv(b, dir / "neither_nor.csv");
  }
  run.print(j);
}

void do_fig1(Runner& run) {
  const auto cfg = run.apply_overrides(fig1_config());
  const auto dir = run.out_dir(cfg);
  const auto z = washout_for(cfg.params, cfg.run.horizon);
  const auto traj = simulate(cfg.params, cfg.init, cfg.run.horizon, z);
  run.write_csv(simulate_bundle(traj, z), dir / "fig1_simulate.csv");
  Series stat;
  const auto sb = sliding_bundle(cfg, &stat);
  run.write_csv(sb, dir / "fig1_sliding.csv");
  run.write_svg(figure_bundle(traj), dir / "fig1.svg", {"fig1", std::nullopt, 800, 480});
  run.write_svg(sb, dir / "fig1_sliding.svg", {"fig1 sliding statistic", 1.0, 800, 480});
  auto j = run_summary("fig1", cfg);
  j["note"] = "s0 profile: 0.8 until t=500, linear to 0.05 at t=1500, then constant; qualitative fixture";
  j["final"] = {{"s", traj.s[cfg.run.horizon]}, {"x", traj.x[cfg.run.horizon]}, {"sliding", stat[cfg.run.horizon]}};
  run.print(j);
}

void do_fig2(Runner& run) {
  const auto cfg = run.apply_overrides(fig2_config(run.flags().offset));
  const auto dir = run.out_dir(cfg);
  const auto z = washout_periodic(cfg.params, cfg.run.horizon);
  const auto traj = simulate(cfg.params, cfg.init, cfg.run.horizon, z);
  const auto bundle = figure_bundle(traj);
  run.write_csv(bundle, dir / "fig2.csv");
  run.write_svg(bundle, dir / "fig2.svg", {"fig2 a=" + io::format_double(run.flags().offset), std::nullopt, 800, 480});
  const auto rep = classify(cfg.params);
  auto j = run_summary("fig2", cfg);
  j["offset"] = run.flags().offset;
  j["periodic_mean"] = rep.lower;
  j["verdict"] = to_string(rep.verdict);
  j["borderline"] = rep.borderline;
  OrbitOptions opts;
  opts.tol = cfg.run.tol;
  j["orbit"] = orbit_json(find_periodic_orbit(cfg.params, cfg.init, opts), run, dir / "fig2_orbit.csv");
  run.print(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chemodde: delayed chemostat simulator and persistence analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "configuration file (key = value)");
  app.add_option("--out", flags.out, "output directory (CHEMODDE_OUT overrides)");
  app.add_option("--horizon", flags.horizon, "number of steps");
  app.add_option("--tol", flags.tol, "orbit convergence tolerance");
  app.add_flag("--svg", flags.svg, "also write SVG charts");

  auto* simulate_cmd = app.add_subcommand("simulate", "integrate the system; CSV t,s0,z,s,x,y,deficit");
  auto* washout_cmd = app.add_subcommand("washout", "biomass-free substrate; CSV t,s0,z");
  auto* exponents_cmd = app.add_subcommand("exponents", "corrections and window bounds; CSV t,z,phi,growth_factor");
  auto* sliding_cmd = app.add_subcommand("sliding", "half-window growth statistic; CSV t,sliding");
  auto* classify_cmd = app.add_subcommand("classify", "persistence / extinction verdict");
  auto* periodic_cmd = app.add_subcommand("periodic", "periodic orbit or washout; CSV by phase");
  auto* nn_cmd = app.add_subcommand("neither-nor", "dyadic-block demonstration");
  nn_cmd->add_option("--E", flags.nn_E, "dilution rate")->capture_default_str();
  nn_cmd->add_option("--r", flags.nn_r, "delay")->capture_default_str();
  nn_cmd->add_option("--n-max", flags.nn_n_max, "number of dyadic blocks")->capture_default_str();
  auto* fig1_cmd = app.add_subcommand("fig1", "first figure fixture");
  auto* fig2_cmd = app.add_subcommand("fig2", "second figure fixture");
  fig2_cmd->add_option("--offset", flags.offset, "mean level a of the sinusoidal input")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  Runner run(flags);
  try {
    if (simulate_cmd->parsed()) do_simulate(run, run.config(), "simulate", "simulate");
    else if (washout_cmd->parsed()) do_washout(run);
    else if (exponents_cmd->parsed()) do_exponents(run);
    else if (sliding_cmd->parsed()) do_sliding(run);
    else if (classify_cmd->parsed()) do_classify(run);
    else if (periodic_cmd->parsed()) do_periodic(run);
    else if (nn_cmd->parsed()) do_neither_nor(run);
    else if (fig1_cmd->parsed()) do_fig1(run);
    else if (fig2_cmd->parsed()) do_fig2(run);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
