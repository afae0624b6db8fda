#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "csqs/cli.hpp"
#include "csqs/errors.hpp"
#include "csqs/loss_channel.hpp"
#include "csqs/measures.hpp"
#include "csqs/phase_space.hpp"

namespace csqs::cli {

namespace {

// Oracle spot checks use every `stride`-th grid node in each direction.
constexpr int kOracleStride = 20;

PhaseGrid field_grid(const RunConfig& cfg, cplx center, std::ostream& err) {
  const PhaseGrid grid = cfg.grid.resolve(center);
  if (!grid.covers(center, 3.0)) {
    err << "warning: grid does not cover the state centre " << io::format_double(center.real()) << "+"
        << io::format_double(center.imag()) << "i with a margin of 3\n";
  }
  return grid;
}

std::string default_out(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  return cfg.subcommand + "." + cfg.format;
}

void write_field(const RunConfig& cfg, const WignerField& field, const io::Meta& meta, const std::string& path,
                 std::ostream& out) {
  emit(path, out, [&](std::ostream& os) {
    if (cfg.format == "json") {
      io::write_field_json(os, field, meta);
    } else {
      io::write_field_csv(os, field, meta);
    }
  });
}

void print_summary(std::ostream& out, const WignerField& field, const std::string& path) {
  const auto [i, j] = field.argmax();
  out << "total_integral=" << io::format_double(field.total_integral) << '\n'
      << "min_value=" << io::format_double(field.min_value()) << '\n'
      << "negativity_volume=" << io::format_double(negativity_volume(field)) << '\n'
      << "argmax_x=" << io::format_double(field.grid.x(i)) << '\n'
      << "argmax_y=" << io::format_double(field.grid.y(j)) << '\n'
      << "file=" << path << '\n';
}

template <class F>
double oracle_spot_delta(const WignerField& field, F&& oracle) {
  double worst = 0.0;
  for (int i = 0; i < field.grid.nx; i += kOracleStride) {
    for (int j = 0; j < field.grid.ny; j += kOracleStride) {
      const double w = oracle(cplx(field.grid.x(i), field.grid.y(j)));
      worst = std::max(worst, std::abs(w - field.at(i, j)));
    }
  }
  return worst;
}

io::Meta point_meta(const RunConfig& cfg, const NormalizedCsqs& state) {
  io::Meta m;
  m["command"] = cfg.subcommand;
  m["state"] = io::state_meta(state);
  m["t_branch"] = cfg.t_negative ? "negative" : "positive";
  m["oracle"] = cfg.oracle;
  if (cfg.cutoff) m["cutoff"] = *cfg.cutoff;
  return m;
}

}  // namespace

int cmd_wigner(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const NormalizedCsqs state = normalize(state_params(cfg));
  const PhaseGrid grid = field_grid(cfg, state.alpha(), err);
  const WignerField field = wigner_field(state, grid, cfg.threads);
  const std::string path = default_out(cfg);
  write_field(cfg, field, point_meta(cfg, state), path, out);
  print_summary(out, field, path);
  if (cfg.oracle) {
    const DensityOperator rho = DensityOperator::pure(csqs_fock(state, oracle_cutoff(cfg, state)));
    out << "oracle_max_delta="
        << io::format_double(oracle_spot_delta(field, [&](cplx g) { return wigner_oracle(rho, g); })) << '\n';
  }
  return kExitOk;
}

int cmd_loss(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const NormalizedCsqs state = normalize(state_params(cfg));
  const LossParams loss = LossParams::from_kappa_t(cfg.kappa_t);
  const PhaseGrid grid = field_grid(cfg, state.alpha() * std::exp(-loss.kappa_t()), err);
  const WignerField field = lossy_field(state, loss, grid, cfg.threads);
  io::Meta meta = point_meta(cfg, state);
  meta["loss"] = {{"kappa_t", loss.kappa_t()}, {"T", loss.T()}};
  const std::string path = default_out(cfg);
  write_field(cfg, field, meta, path, out);
  print_summary(out, field, path);
  if (cfg.oracle) {
    const DensityOperator rho = lossy_density(state, loss, oracle_cutoff(cfg, state));
    out << "oracle_max_delta="
        << io::format_double(oracle_spot_delta(field, [&](cplx g) { return wigner_oracle(rho, g); })) << '\n';
  }
  return kExitOk;
}

int cmd_measures(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const NormalizedCsqs state = normalize(state_params(cfg));
  const PhaseGrid grid = field_grid(cfg, state.alpha(), err);
  const int cutoff = cfg.oracle ? oracle_cutoff(cfg, state) : 0;
  auto if_oracle = [&](auto&& f) { return cfg.oracle ? std::optional<double>(f()) : std::nullopt; };

  std::vector<MeasureReport> reports;

  reports.push_back(MeasureReport::make(
      MeasureName::LE, linear_entropy_closed(state),
      if_oracle([&] { return linear_entropy_oracle(state, cutoff); }),
      "uncorrected r^4 variant gives " + io::format_double(linear_entropy_uncorrected(state))));

  reports.push_back(MeasureReport::make(
      MeasureName::N_rho, skew_closed(state),
      if_oracle([&] { return skew_oracle(state, cutoff); }),
      std::abs(state.alpha()) < 1e-50 ? "alpha = 0 evaluated through the ladder oracle" : ""));

  std::optional<double> wln_expr;
  std::string wln_note = "oracle_value is the grid quadrature; closed_value is the quarantined closed expression";
  try {
    wln_expr = wln_reported_closed(state);
  } catch (const DomainError& e) {
    wln_note += "; closed expression undefined here: " + std::string(e.what());
  }
  reports.push_back(MeasureReport::make(MeasureName::WLN, wln_expr, wln_numeric(state, grid, kDefaultGridEps, cfg.threads),
                                        wln_note));

  reports.push_back(MeasureReport::make(
      MeasureName::delta_NG, rel_entropy_ng(state),
      if_oracle([&] { return rel_entropy_ng(covariance_oracle(state, cutoff)); }), ""));

  io::Meta meta = point_meta(cfg, state);
  meta["grid"] = io::grid_meta(grid);
  emit(cfg.out, out, [&](std::ostream& os) {
    if (cfg.format == "json") {
      io::write_reports_json(os, reports, meta);
    } else {
      io::write_reports_csv(os, reports, meta);
    }
  });
  return kExitOk;
}

}  // namespace csqs::cli
