#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>

#include "csqs/cli.hpp"
#include "csqs/errors.hpp"
#include "csqs/measures.hpp"
#include "csqs/parallel.hpp"
#include "csqs/phase_space.hpp"

namespace csqs::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> sweep_row(const RunConfig& cfg, double alpha_re, double r) {
  const NormalizedCsqs state = normalize(StateParams::from_r({alpha_re, cfg.alpha_im}, r, cfg.t_negative));
  const PhaseGrid grid = cfg.grid.resolve(state.alpha());
  double wln_expr = kNaN;
  try {
    wln_expr = wln_reported_closed(state);
  } catch (const DomainError&) {
  }
  std::vector<double> row{alpha_re,
                          r,
                          state.t(),
                          state.n_const(),
                          linear_entropy_closed(state),
                          skew_closed(state),
                          wln_numeric(state, grid, kDefaultGridEps, 1),
                          wln_expr,
                          rel_entropy_ng(state)};
  if (cfg.oracle) {
    const int cutoff = oracle_cutoff(cfg, state);
    row.push_back(linear_entropy_oracle(state, cutoff));
    row.push_back(skew_oracle(state, cutoff));
    row.push_back(rel_entropy_ng(covariance_oracle(state, cutoff)));
  }
  return row;
}

}  // namespace

void write_table(std::ostream& os, const Table& table, const io::Meta& meta, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    doc["data"] = {{"columns", table.columns}, {"rows", std::move(rows)}};
    os << doc.dump() << '\n';
    return;
  }
  os << "# csqs-lab table\n";
  io::write_csv_meta(os, meta);
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << io::format_double(row[c]);
    os << '\n';
  }
}

void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidParameters("cannot open " + path + " for writing");
  writer(file);
  if (!file) throw InvalidParameters("write to " + path + " failed");
}

io::Meta sweep_meta(const RunConfig& cfg) {
  io::Meta m;
  m["command"] = "sweep";
  m["alpha_im"] = cfg.alpha_im;
  m["t_branch"] = cfg.t_negative ? "negative" : "positive";
  m["alpha_range"] = {{"start", cfg.alpha_range.start}, {"stop", cfg.alpha_range.stop}, {"step", cfg.alpha_range.step}};
  m["r_range"] = {{"start", cfg.r_range.start}, {"stop", cfg.r_range.stop}, {"step", cfg.r_range.step}};
  if (cfg.grid.any()) {
    m["grid"] = io::grid_meta(cfg.grid.resolve({0.0, 0.0}));
  } else {
    m["grid"] = "adaptive";
  }
  m["oracle"] = cfg.oracle;
  if (cfg.cutoff) m["cutoff"] = *cfg.cutoff;
  m["row_order"] = "alpha-major";
  return m;
}

Table sweep_table(const RunConfig& cfg) {
  cfg.alpha_range.validate("alpha");
  cfg.r_range.validate("r");
  for (double r : cfg.r_range.values()) {
    if (std::abs(r) > 1.0 + 1e-12) throw InvalidParameters("r range leaves [-1, 1]");
  }
  const std::vector<double> alphas = cfg.alpha_range.values();
  std::vector<double> rs = cfg.r_range.values();
  for (double& r : rs) r = std::clamp(r, -1.0, 1.0);

  Table table;
  table.columns = {"alpha", "r", "t", "N", "LE", "N_rho", "WLN", "WLN_closed_expr", "delta_NG"};
  if (cfg.oracle) {
    for (const char* c : {"LE_oracle", "N_rho_oracle", "delta_NG_oracle"}) table.columns.emplace_back(c);
  }

  const long points = static_cast<long>(alphas.size() * rs.size());
  table.rows.resize(static_cast<std::size_t>(points));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(points));
  const int workers = resolve_workers(cfg.threads);

  // Each point is computed independently and stored by index, so the
  // assembled table does not depend on the worker count.
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long k = 0; k < points; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      table.rows[idx] = sweep_row(cfg, alphas[idx / rs.size()], rs[idx % rs.size()]);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return table;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const Table table = sweep_table(cfg);
  const io::Meta meta = sweep_meta(cfg);
  emit(cfg.out, out, [&](std::ostream& os) { write_table(os, table, meta, cfg.format); });
  return kExitOk;
}

}  // namespace csqs::cli
