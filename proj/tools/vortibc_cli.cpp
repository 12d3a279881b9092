#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "vortibc/commands.hpp"
#include "vortibc/log.hpp"

using namespace vortibc;

namespace {

// VORTIBC_THREADS caps sweep concurrency; unset means the hardware count.
int thread_cap() {
  int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("VORTIBC_THREADS")) {
    try {
      cap = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring VORTIBC_THREADS='" << env << "'\n";
    }
  }
  return cap;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Navier-Stokes and Euler solvers with vorticity boundary conditions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, resolution;
  std::uint64_t seed = 0;
  bool verbose = false, print_config = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory (overrides output.directory)");
  app.add_option("--resolution-override", resolution, "grid size as n1,n2");
  auto* seed_opt = app.add_option("--seed", seed, "seed for random initial fields");
  app.add_flag("-v,--verbose", verbose, "log solver progress");
  app.add_flag("--print-config", print_config, "print the effective configuration first");

  const char* commands[][2] = {{"verify", "identity and inequality suite at several resolutions"},
                               {"stokes", "Stokes problem with vorticity boundary data"},
                               {"ns", "Navier-Stokes by Picard iteration of the velocity map"},
                               {"euler", "Euler reference solution"},
                               {"sweep", "vanishing-viscosity sweep over physics.mu_list"}};
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  if (verbose) set_log_level(LogLevel::Info);

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.directory = out_dir;
    if (*seed_opt) cfg.seed = seed;
    if (!resolution.empty()) {
      const auto comma = resolution.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::ConfigError, "--resolution-override expects n1,n2");
      std::size_t p1 = 0, p2 = 0;
      const std::string a = resolution.substr(0, comma), b = resolution.substr(comma + 1);
      cfg.n1 = std::stoi(a, &p1);
      cfg.n2 = std::stoi(b, &p2);
      if (p1 != a.size() || p2 != b.size()) throw Error(ErrorCode::ConfigError, "--resolution-override expects n1,n2");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception&) {
    std::cerr << "error: --resolution-override expects n1,n2\n";
    return kExitConfig;
  }
  if (print_config) std::cout << serialize_config(cfg);
  return run_command(name, cfg, thread_cap(), std::cout, std::cerr);
}
