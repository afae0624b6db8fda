#include <exception>
#include <ostream>

#include "csqs/cli.hpp"
#include "csqs/errors.hpp"

namespace csqs::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseOutcome parsed = parse_args(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  const RunConfig& cfg = *parsed.config;
  try {
    if (cfg.subcommand == "wigner") return cmd_wigner(cfg, out, err);
    if (cfg.subcommand == "measures") return cmd_measures(cfg, out, err);
    if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.subcommand == "loss") return cmd_loss(cfg, out, err);
    if (cfg.subcommand == "reproduce") return cmd_reproduce(cfg, out, err);
    if (cfg.subcommand == "compare") return cmd_compare(cfg, out, err);
    err << "error: unknown subcommand " << cfg.subcommand << '\n';
    return kExitUsage;
  } catch (const InvalidParameters& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace csqs::cli
