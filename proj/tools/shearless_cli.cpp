// shearless - command-line front end.
//
//   shearless <subcommand> [--config FILE] [--out DIR] [--omega X] [--j0 N]
//             [--k0 X] [--sigma X] [--periods N] [--seed N]
//
// Exit codes: 0 success, 1 configuration error, 2 numerical contract violation.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "shearless/config.hpp"
#include "shearless/experiments.hpp"

namespace {

using namespace shearless;

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NonPositiveOmega:
    case Errc::BadSiteCount:
    case Errc::ZeroSubsteps:
    case Errc::BadPacket:
    case Errc::InvalidArgument:
    case Errc::SyntaxError:
    case Errc::UnknownKey:
    case Errc::InvalidValue:
    case Errc::UnknownFigureKind:
    case Errc::IoError:
      return kExitConfig;
    default:
      return kExitNumerical;
  }
}

// Which config key --periods stands for in each subcommand.
const std::map<std::string, std::vector<std::string>> kPeriodKeys = {
    {"sos", {"sos.periods"}},
    {"evolve", {"evolve.periods"}},
    {"concurrence", {"concurrence.periods"}},
    {"ensemble", {"ensemble.periods"}},
    {"rotation", {"rotation.iterations"}},
    {"reproduce-paper",
     {"sos.periods", "evolve.periods", "concurrence.periods", "ensemble.periods"}},
};

struct Overrides {
  std::optional<std::string> out, omega, j0, k0, sigma, periods, seed;
};

void apply(config::ExperimentConfig& cfg, const std::string& command, const Overrides& o) {
  if (o.omega) config::set_entry(cfg, "model.omega", *o.omega);
  if (o.j0) config::set_entry(cfg, "packet.j0", *o.j0);
  if (o.k0) config::set_entry(cfg, "packet.k0", *o.k0);
  if (o.sigma) config::set_entry(cfg, "floquet.sigma", *o.sigma);
  if (o.seed) config::set_entry(cfg, "ensemble.rng_seed", *o.seed);
  if (o.out) config::set_entry(cfg, "output.dir", *o.out);
  if (o.periods) {
    const auto it = kPeriodKeys.find(command);
    if (it == kPeriodKeys.end()) {
      throw Error(Errc::InvalidArgument, "--periods does not apply to '" + command + "'");
    }
    for (const auto& key : it->second) config::set_entry(cfg, key, *o.periods);
  }
  config::check_consistency(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven Harper model / one-down-spin chain experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersion));

  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "configuration file (defaults when omitted)");
  auto opt = [&](const char* name, std::optional<std::string>& slot, const char* help) {
    app.add_option_function<std::string>(name, [&slot](const std::string& v) { slot = v; }, help);
  };
  opt("--out", o.out, "output directory");
  opt("--omega", o.omega, "drive frequency");
  opt("--j0", o.j0, "packet centre site");
  opt("--k0", o.k0, "packet momentum");
  opt("--sigma", o.sigma, "spectrum smoothing width");
  opt("--periods", o.periods, "number of drive periods (iterations for rotation)");
  opt("--seed", o.seed, "ensemble RNG seed");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"sos", "classical surface of section"},
      {"evolve", "wavepacket evolution P(j,t)"},
      {"floquet", "local quasienergy spectrum"},
      {"concurrence", "pairwise concurrence series"},
      {"rotation", "rotation-number profile and shearless momentum"},
      {"ensemble", "classical ensemble spread"},
      {"reproduce-paper", "all reference panels into separate subdirectories"},
      {"config", "print the resolved configuration and exit"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    auto cfg = config::load_config(config_path);
    apply(cfg, command, o);

    if (command == "config") {
      std::cout << config::to_text(cfg);
      return 0;
    }
    std::vector<std::filesystem::path> written;
    if (command == "reproduce-paper") {
      written = experiments::reproduce_paper(cfg);
    } else {
      written = experiments::write_tables(experiments::run_named(command, cfg), cfg.out_dir);
    }
    for (const auto& p : written) std::cout << p.string() << '\n';
    return 0;
  } catch (const Error& e) {
    const int rc = exit_code_for(e.code());
    std::cerr << "shearless: " << (rc == kExitConfig ? "configuration error" : "numerical contract violated")
              << " [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "shearless: " << e.what() << '\n';
    return kExitNumerical;
  }
}
