#pragma once

// Command-line front-end. Every command takes a fully merged RunConfig
// (flags > JSON config file > defaults) and throws csqs::Error subclasses,
// which run_cli maps onto exit codes.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csqs/csqs_state.hpp"
#include "csqs/field_io.hpp"
#include "csqs/grid.hpp"

namespace csqs::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitDomain = 3, kExitCompareFailed = 4 };

/// Inclusive arithmetic range start, start + step, ... <= stop (with 1e-9 slack).
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// Throws InvalidParameters unless start < stop and step > 0.
  void validate(const std::string& name) const;
  std::vector<double> values() const;
};

/// Grid flags. Unset fields fall back to the default grid; with nothing set the
/// grid is re-centred on the state (see PhaseGrid::for_displacement).
struct GridSpec {
  std::optional<double> x_min, x_max, y_min, y_max;
  std::optional<int> nx, ny;

  bool any() const;
  PhaseGrid resolve(cplx center) const;
};

struct RunConfig {
  std::string subcommand;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  std::optional<double> t;
  std::optional<double> r;
  bool t_negative = false;
  GridSpec grid;
  double kappa_t = 0.0;
  std::string out;
  std::string format = "csv";
  bool oracle = false;
  std::optional<int> cutoff;
  int threads = 0;
  Range alpha_range;
  Range r_range;
  std::string figure;
  std::string out_dir = ".";
  int samples = 5;
  unsigned seed = 20240601u;

  cplx alpha() const { return {alpha_re, alpha_im}; }
};

/// Exactly one of t / r must be set. r maps to t = +sqrt(1 - r^2), or the
/// negative root under t_negative.
StateParams state_params(const RunConfig& cfg);

/// Oracle cutoff: the override when given, otherwise csqs_cutoff at kFieldTailEps with `extra` headroom.
int oracle_cutoff(const RunConfig& cfg, const NormalizedCsqs& state, int extra = 2);

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};

/// Parses argv-style arguments (without the program name) and merges the JSON
/// config file. Help and usage errors are reported on `out` / `err`.
ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rectangular numeric table written as CSV or as {meta, data: {columns, rows}}.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table(std::ostream& os, const Table& table, const io::Meta& meta, const std::string& format);

/// Writes to `path`, or to `fallback` when path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& writer);

Table sweep_table(const RunConfig& cfg);
io::Meta sweep_meta(const RunConfig& cfg);

int cmd_wigner(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_measures(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_loss(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reproduce(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full entry point: parse, dispatch, map exceptions to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csqs::cli
