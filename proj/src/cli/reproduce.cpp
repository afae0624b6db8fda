#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <iostream>
#include <ostream>

#include "csqs/cli.hpp"
#include "csqs/errors.hpp"
#include "csqs/loss_channel.hpp"
#include "csqs/measures.hpp"
#include "csqs/parallel.hpp"
#include "csqs/phase_space.hpp"

namespace csqs::cli {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

struct Panel {
  char label;
  double alpha;
  double t;
  double kappa_t;
};

using RowFn = std::function<std::vector<double>(const NormalizedCsqs&)>;

std::string panel_path(const RunConfig& cfg, const std::string& stem) {
  return (std::filesystem::path(cfg.out_dir) / (stem + "." + cfg.format)).string();
}

void write_panel(const RunConfig& cfg, const std::string& path, const WignerField& field, const io::Meta& meta) {
  emit(path, std::cerr, [&](std::ostream& os) {
    if (cfg.format == "json") {
      io::write_field_json(os, field, meta);
    } else {
      io::write_field_csv(os, field, meta);
    }
  });
}

void field_panels(const RunConfig& cfg, const std::string& figure, const std::vector<Panel>& panels, bool lossy,
                  std::ostream& out) {
  for (const Panel& p : panels) {
    const NormalizedCsqs state = normalize(StateParams::from_t({p.alpha, 0.0}, p.t));
    io::Meta meta;
    meta["command"] = "reproduce";
    meta["figure"] = figure;
    meta["panel"] = std::string(1, p.label);
    meta["state"] = io::state_meta(state);
    WignerField field;
    if (lossy) {
      const LossParams loss = LossParams::from_kappa_t(p.kappa_t);
      meta["loss"] = {{"kappa_t", loss.kappa_t()}, {"T", loss.T()}};
      field = lossy_field(state, loss, PhaseGrid::for_displacement(state.alpha() * std::exp(-p.kappa_t)), cfg.threads);
    } else {
      field = wigner_field(state, PhaseGrid::for_displacement(state.alpha()), cfg.threads);
    }
    const std::string path = panel_path(cfg, figure + p.label);
    write_panel(cfg, path, field, meta);
    out << path << " alpha=" << io::format_double(p.alpha) << " t=" << io::format_double(p.t);
    if (lossy) out << " kappa_t=" << io::format_double(p.kappa_t);
    out << " negativity_volume=" << io::format_double(field.negative_integral) << '\n';
  }
}

// Profile over alpha in [0.01, 3] (151 points) for r in {0.25, 0.5, 0.75, 1}, alpha-major.
void profile(const RunConfig& cfg, const std::string& figure, std::vector<std::string> value_columns, const RowFn& fn,
             std::ostream& out) {
  const Range alpha_range{0.01, 3.0, 2.99 / 150.0};
  const std::vector<double> alphas = alpha_range.values();
  const std::vector<double> rs{0.25, 0.5, 0.75, 1.0};

  Table table;
  table.columns = {"alpha", "r", "t"};
  table.columns.insert(table.columns.end(), value_columns.begin(), value_columns.end());
  const long points = static_cast<long>(alphas.size() * rs.size());
  table.rows.resize(static_cast<std::size_t>(points));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(points));
  const int workers = resolve_workers(cfg.threads);

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long k = 0; k < points; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      const double alpha = alphas[idx / rs.size()];
      const double r = rs[idx % rs.size()];
      const NormalizedCsqs state = normalize(StateParams::from_r({alpha, 0.0}, r));
      std::vector<double> row{alpha, r, state.t()};
      const std::vector<double> values = fn(state);
      row.insert(row.end(), values.begin(), values.end());
      table.rows[idx] = std::move(row);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  io::Meta meta;
  meta["command"] = "reproduce";
  meta["figure"] = figure;
  meta["alpha_range"] = {{"start", alpha_range.start}, {"stop", alpha_range.stop}, {"step", alpha_range.step}};
  meta["r_values"] = rs;
  meta["t_branch"] = "positive";
  const std::string path = panel_path(cfg, figure);
  emit(path, std::cerr, [&](std::ostream& os) { write_table(os, table, meta, cfg.format); });
  out << path << " rows=" << table.rows.size() << '\n';
}

}  // namespace

int cmd_reproduce(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const std::string& fig = cfg.figure;
  if (fig != "fig2" && fig != "fig3" && fig != "fig4" && fig != "fig5" && fig != "fig6" && fig != "fig7") {
    throw InvalidParameters("unknown figure '" + fig + "' (expected fig2 .. fig7)");
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw InvalidParameters("cannot create output directory " + cfg.out_dir + ": " + ec.message());

  if (fig == "fig2") {
    field_panels(cfg, fig,
                 {{'a', 0.5, 1.0, 0.0},
                  {'b', 0.5, kInvSqrt2, 0.0},
                  {'c', 0.5, 0.0, 0.0},
                  {'d', 1.0, 0.5, 0.0},
                  {'e', 1.5, 0.5, 0.0},
                  {'f', 1.75, 0.5, 0.0}},
                 false, out);
  } else if (fig == "fig3") {
    profile(cfg, fig, {"LE"}, [](const NormalizedCsqs& s) { return std::vector<double>{linear_entropy_closed(s)}; },
            out);
  } else if (fig == "fig4") {
    profile(cfg, fig, {"N_rho"}, [](const NormalizedCsqs& s) { return std::vector<double>{skew_closed(s)}; }, out);
  } else if (fig == "fig5") {
    profile(
        cfg, fig, {"WLN", "WLN_closed_expr"},
        [](const NormalizedCsqs& s) {
          double wln_expr = std::numeric_limits<double>::quiet_NaN();
          try {
            wln_expr = wln_reported_closed(s);
          } catch (const DomainError&) {
          }
          return std::vector<double>{wln_numeric(s, PhaseGrid::for_displacement(s.alpha()), kDefaultGridEps, 1),
                                     wln_expr};
        },
        out);
  } else if (fig == "fig6") {
    profile(cfg, fig, {"delta_NG"}, [](const NormalizedCsqs& s) { return std::vector<double>{rel_entropy_ng(s)}; },
            out);
  } else {
    field_panels(cfg, fig,
                 {{'a', 1.5, kInvSqrt2, 0.1},
                  {'b', 1.5, kInvSqrt2, 0.3},
                  {'c', 1.5, kInvSqrt2, 0.5},
                  {'d', 0.5, 1.0, 0.3},
                  {'e', 0.5, kInvSqrt2, 0.3},
                  {'f', 0.5, 0.0, 0.3},
                  {'g', 1.0, kInvSqrt2, 0.3},
                  {'h', 1.5, kInvSqrt2, 0.3},
                  {'i', 1.75, kInvSqrt2, 0.3}},
                 true, out);
  }
  return kExitOk;
}

}  // namespace csqs::cli
