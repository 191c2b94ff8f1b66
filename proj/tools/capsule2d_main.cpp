// capsule2d: boundary-integral simulation of a 2D elastic capsule or
// drop/bubble in Stokes strain/shear flow.
//
// Subcommands:
//   simulate <config>                    run one config, write CSV + manifest
//   converge <config> --resolutions ...  doubling-chain refinement study
//   diagnose <config>                    filtered vs unfiltered tail history

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stokesbi/driver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int classify(const stokesbi::Error& e) {
  switch (e.code()) {
    case stokesbi::ErrorCode::config_error:
    case stokesbi::ErrorCode::invalid_shape:
    case stokesbi::ErrorCode::invalid_input:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

std::vector<int> parse_resolutions(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capsule2d: spectral boundary-integral Stokes interface simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string resolutions_spec = "32,64,128";

  CLI::App* sim = app.add_subcommand("simulate", "run one configuration");
  sim->add_option("config", config_path, "config file")->required();

  CLI::App* conv = app.add_subcommand("converge", "grid refinement study");
  conv->add_option("config", config_path, "config file")->required();
  conv->add_option("--resolutions", resolutions_spec, "comma-separated doubling chain");

  CLI::App* diag = app.add_subcommand("diagnose", "filtered vs unfiltered stability report");
  diag->add_option("config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    stokesbi::RunConfig cfg = stokesbi::parse_config_file(config_path);
    for (const auto& w : stokesbi::config_warnings(cfg))
      std::cerr << "warning: " << w << '\n';

    if (sim->parsed()) {
      stokesbi::SimulateResult res = stokesbi::simulate(cfg);
      std::cout << "wrote " << res.files.size() << " files to " << res.output_dir << '\n';
      if (res.trajectory.failed) {
        std::cerr << "run failed: " << res.trajectory.failure
                  << " (last good time " << res.trajectory.last_good_time << ")\n";
        return kExitRuntime;
      }
      return kExitOk;
    }

    if (conv->parsed()) {
      std::vector<int> resolutions = parse_resolutions(resolutions_spec);
      stokesbi::ConvergenceReport rep = stokesbi::converge(cfg, resolutions);
      std::printf("%8s %8s %14s %14s %14s %14s\n", "n", "2n", "dtheta", "dsigma", "dalpha0",
                  "dtau");
      for (const auto& r : rep.rows)
        std::printf("%8d %8d %14.6e %14.6e %14.6e %14.6e\n", r.n_coarse, r.n_fine, r.dtheta,
                    r.dsigma, r.dalpha0, r.dtau);
      for (std::size_t i = 0; i < rep.order_theta.size(); ++i)
        std::printf("observed order (theta): %.2f\n", rep.order_theta[i]);
      std::cout << "report: " << rep.csv_path << '\n';
      if (rep.failed) {
        std::cerr << rep.failure << '\n';
        return kExitRuntime;
      }
      return kExitOk;
    }

    if (diag->parsed()) {
      stokesbi::DiagnoseReport rep = stokesbi::diagnose(cfg);
      auto describe = [](const stokesbi::DiagnoseSeries& s) {
        std::printf("%-10s tail(t0) = %.3e tail(end) = %.3e%s\n", s.label.c_str(),
                    s.high_mode_max.empty() ? 0.0 : s.high_mode_max.front(),
                    s.high_mode_max.empty() ? 0.0 : s.high_mode_max.back(),
                    s.blew_up ? " [blew up]" : "");
        if (s.blew_up) std::printf("  first blow-up time: %g\n", s.first_blow_up_time);
      };
      describe(rep.filtered);
      describe(rep.unfiltered);
      for (const auto& flag : rep.flags) std::cout << "flag: " << flag << '\n';
      std::cout << "report: " << rep.csv_path << '\n';
      return kExitOk;
    }
  } catch (const stokesbi::Error& e) {
    std::cerr << "error (" << stokesbi::error_code_name(e.code()) << "): " << e.what() << '\n';
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
