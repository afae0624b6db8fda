#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "csqs/cli.hpp"
#include "csqs/errors.hpp"

namespace csqs::cli {

namespace {

// Raw option storage; optional fields are resolved after parsing by asking the
// selected subcommand whether the flag was seen.
struct RawOptions {
  double alpha = 0.0, alpha_im = 0.0, t = 0.0, r = 0.0;
  bool t_negative = false;
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  int nx = 0, ny = 0;
  double kappa_t = 0.0;
  std::string out, format = "csv", config, figure, out_dir = ".";
  bool oracle = false;
  int cutoff = 0, threads = 0, samples = 5;
  unsigned seed = 20240601u;
  double alpha_start = 0, alpha_stop = 0, alpha_step = 0, r_start = 0, r_stop = 0, r_step = 0;
};

void add_state(CLI::App* sub, RawOptions& o, bool single_point) {
  if (single_point) {
    sub->add_option("--alpha", o.alpha, "Re(alpha)");
    sub->add_option("--t", o.t, "weight of the annihilation term");
    sub->add_option("--r", o.r, "weight of the creation term (t = +sqrt(1 - r^2))");
  }
  sub->add_option("--alpha-im", o.alpha_im, "Im(alpha)");
  sub->add_flag("--t-negative", o.t_negative, "take t = -sqrt(1 - r^2) when r is given");
}

void add_grid(CLI::App* sub, RawOptions& o) {
  sub->add_option("--x-min", o.x_min, "grid Re(gamma) lower bound");
  sub->add_option("--x-max", o.x_max, "grid Re(gamma) upper bound");
  sub->add_option("--y-min", o.y_min, "grid Im(gamma) lower bound");
  sub->add_option("--y-max", o.y_max, "grid Im(gamma) upper bound");
  sub->add_option("--nx", o.nx, "grid points along Re(gamma) (odd)");
  sub->add_option("--ny", o.ny, "grid points along Im(gamma) (odd)");
}

void add_common(CLI::App* sub, RawOptions& o, bool with_format) {
  sub->add_option("--out", o.out, "output path (default depends on the command)");
  if (with_format) sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", o.threads, "worker count (0 = all, capped by CSQS_LAB_THREADS)");
  sub->add_option("--config", o.config, "JSON file with flag names as keys");
}

void add_oracle(CLI::App* sub, RawOptions& o) {
  sub->add_flag("--oracle", o.oracle, "also evaluate the number-basis oracle");
  sub->add_option("--cutoff", o.cutoff, "number-basis cutoff override");
}

void add_ranges(CLI::App* sub, RawOptions& o) {
  sub->add_option("--alpha-start", o.alpha_start, "first alpha");
  sub->add_option("--alpha-stop", o.alpha_stop, "last alpha");
  sub->add_option("--alpha-step", o.alpha_step, "alpha step");
  sub->add_option("--r-start", o.r_start, "first r");
  sub->add_option("--r-stop", o.r_stop, "last r");
  sub->add_option("--r-step", o.r_step, "r step");
}

void build(CLI::App& app, RawOptions& o) {
  app.require_subcommand(1);
  app.fallthrough(false);

  auto* wigner = app.add_subcommand("wigner", "sample the Wigner function on a grid");
  add_state(wigner, o, true);
  add_grid(wigner, o);
  add_oracle(wigner, o);
  add_common(wigner, o, true);

  auto* measures = app.add_subcommand("measures", "LE, N_rho, WLN and delta_NG at one state");
  add_state(measures, o, true);
  add_grid(measures, o);
  add_oracle(measures, o);
  add_common(measures, o, true);

  auto* loss = app.add_subcommand("loss", "Wigner function after photon loss");
  add_state(loss, o, true);
  add_grid(loss, o);
  loss->add_option("--kappa-t", o.kappa_t, "rescaled loss time kappa*t (>= 0)");
  add_oracle(loss, o);
  add_common(loss, o, true);

  auto* sweep = app.add_subcommand("sweep", "all measures over an (alpha, r) lattice");
  add_state(sweep, o, false);
  add_ranges(sweep, o);
  add_grid(sweep, o);
  add_oracle(sweep, o);
  add_common(sweep, o, true);

  auto* compare = app.add_subcommand("compare", "closed forms against oracles over an (alpha, r) lattice");
  add_state(compare, o, false);
  add_ranges(compare, o);
  compare->add_option("--samples", o.samples, "random phase-space points per lattice state");
  compare->add_option("--seed", o.seed, "seed for the phase-space points");
  compare->add_option("--cutoff", o.cutoff, "number-basis cutoff override");
  add_common(compare, o, false);

  auto* reproduce = app.add_subcommand("reproduce", "write the data behind one figure");
  reproduce->add_option("--figure", o.figure, "fig2 .. fig7")->required();
  reproduce->add_option("--out-dir", o.out_dir, "directory for the panel files");
  reproduce->add_option("--threads", o.threads, "worker count (0 = all, capped by CSQS_LAB_THREADS)");
  reproduce->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  reproduce->add_option("--config", o.config, "JSON file with flag names as keys");
}

void parse_into(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
}

bool given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

std::string json_arg(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return io::format_double(v.get<double>());
  throw InvalidParameters("config key '" + key + "' must be a string or number");
}

// Appends "--key value" pairs for config keys whose flag was not given.
std::vector<std::string> config_args(const CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameters("cannot read config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw InvalidParameters("config file " + path + " must hold a JSON object");

  const bool state_flag = given(sub, "--t") || given(sub, "--r");
  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr) throw InvalidParameters("config key '" + key + "' is not a flag of " + sub->get_name());
    if (opt->count() > 0) continue;
    if ((key == "t" || key == "r") && state_flag) continue;
    if (key == "oracle" || key == "t-negative") {
      if (!value.is_boolean()) throw InvalidParameters("config key '" + key + "' must be a boolean");
      if (value.get<bool>()) extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    extra.push_back(json_arg(value, key));
  }
  return extra;
}

Range pick_range(const CLI::App* sub, const std::string& prefix, double start, double stop, double step,
                 Range fallback) {
  Range r = fallback;
  if (given(sub, "--" + prefix + "-start")) r.start = start;
  if (given(sub, "--" + prefix + "-stop")) r.stop = stop;
  if (given(sub, "--" + prefix + "-step")) r.step = step;
  return r;
}

RunConfig finalize(const CLI::App* sub, const RawOptions& o) {
  RunConfig cfg;
  cfg.subcommand = sub->get_name();
  cfg.alpha_re = o.alpha;
  cfg.alpha_im = o.alpha_im;
  if (given(sub, "--t")) cfg.t = o.t;
  if (given(sub, "--r")) cfg.r = o.r;
  cfg.t_negative = o.t_negative;
  if (given(sub, "--x-min")) cfg.grid.x_min = o.x_min;
  if (given(sub, "--x-max")) cfg.grid.x_max = o.x_max;
  if (given(sub, "--y-min")) cfg.grid.y_min = o.y_min;
  if (given(sub, "--y-max")) cfg.grid.y_max = o.y_max;
  if (given(sub, "--nx")) cfg.grid.nx = o.nx;
  if (given(sub, "--ny")) cfg.grid.ny = o.ny;
  cfg.kappa_t = o.kappa_t;
  cfg.out = o.out;
  cfg.format = o.format;
  cfg.oracle = o.oracle;
  if (given(sub, "--cutoff")) {
    if (o.cutoff < 1) throw InvalidParameters("--cutoff must be >= 1");
    cfg.cutoff = o.cutoff;
  }
  cfg.threads = o.threads;
  cfg.figure = o.figure;
  cfg.out_dir = o.out_dir;
  cfg.samples = o.samples;
  cfg.seed = o.seed;

  const bool is_compare = cfg.subcommand == "compare";
  const Range alpha_default = is_compare ? Range{0.25, 2.0, 0.25} : Range{0.1, 3.0, 0.1};
  const Range r_default = is_compare ? Range{-1.0, 1.0, 0.25} : Range{0.25, 1.0, 0.25};
  cfg.alpha_range = pick_range(sub, "alpha", o.alpha_start, o.alpha_stop, o.alpha_step, alpha_default);
  cfg.r_range = pick_range(sub, "r", o.r_start, o.r_stop, o.r_step, r_default);

  if (cfg.threads < 0) throw InvalidParameters("--threads must be >= 0");
  if (cfg.samples < 1) throw InvalidParameters("--samples must be >= 1");
  if (!std::isfinite(cfg.alpha_re) || !std::isfinite(cfg.alpha_im)) throw InvalidParameters("alpha must be finite");
  if (cfg.subcommand == "sweep" || cfg.subcommand == "compare") {
    cfg.alpha_range.validate("alpha");
    cfg.r_range.validate("r");
  }
  if (cfg.subcommand == "wigner" || cfg.subcommand == "measures" || cfg.subcommand == "loss") {
    if (cfg.t.has_value() == cfg.r.has_value()) throw InvalidParameters("give exactly one of --t or --r");
  }
  return cfg;
}

}  // namespace

void Range::validate(const std::string& name) const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || !(start < stop) || !(step > 0.0)) {
    throw InvalidParameters(name + " range needs start < stop and step > 0");
  }
}

std::vector<double> Range::values() const {
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

bool GridSpec::any() const { return x_min || x_max || y_min || y_max || nx || ny; }

PhaseGrid GridSpec::resolve(cplx center) const {
  if (!any()) return PhaseGrid::for_displacement(center);
  PhaseGrid g = PhaseGrid::default_grid();
  if (x_min) g.x_min = *x_min;
  if (x_max) g.x_max = *x_max;
  if (y_min) g.y_min = *y_min;
  if (y_max) g.y_max = *y_max;
  if (nx) g.nx = *nx;
  if (ny) g.ny = *ny;
  g.validate();
  return g;
}

StateParams state_params(const RunConfig& cfg) {
  if (cfg.t.has_value() == cfg.r.has_value()) throw InvalidParameters("give exactly one of --t or --r");
  if (cfg.t) {
    if (std::abs(*cfg.t) > 1.0) throw InvalidParameters("|t| must be <= 1");
    return StateParams::from_t(cfg.alpha(), *cfg.t);
  }
  if (std::abs(*cfg.r) > 1.0) throw InvalidParameters("|r| must be <= 1");
  return StateParams::from_r(cfg.alpha(), *cfg.r, cfg.t_negative);
}

int oracle_cutoff(const RunConfig& cfg, const NormalizedCsqs& state, int extra) {
  return cfg.cutoff ? *cfg.cutoff : csqs_cutoff(state, extra, kFieldTailEps);
}

ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    CLI::App first{"csqs_lab: phase-space toolkit for coherent superposed states", "csqs_lab"};
    RawOptions raw_first;
    build(first, raw_first);
    parse_into(first, args);
    const CLI::App* sub_first = first.get_subcommands().front();

    std::vector<std::string> merged = args;
    if (given(sub_first, "--config")) {
      const auto extra = config_args(sub_first, raw_first.config);
      merged.insert(merged.end(), extra.begin(), extra.end());
    }

    CLI::App app{"csqs_lab: phase-space toolkit for coherent superposed states", "csqs_lab"};
    RawOptions raw;
    build(app, raw);
    parse_into(app, merged);
    return {finalize(app.get_subcommands().front(), raw), kExitOk};
  } catch (const CLI::CallForHelp&) {
    CLI::App help{"csqs_lab: phase-space toolkit for coherent superposed states", "csqs_lab"};
    RawOptions raw;
    build(help, raw);
    try {
      parse_into(help, args);
    } catch (const CLI::CallForHelp& e) {
      help.exit(e, out, err);
    } catch (const CLI::ParseError&) {
    }
    return {std::nullopt, kExitOk};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return {std::nullopt, kExitUsage};
  } catch (const InvalidParameters& e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }
}

}  // namespace csqs::cli
