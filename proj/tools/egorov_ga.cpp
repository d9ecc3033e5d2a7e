#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "egorov/cli/scenario.hpp"
#include "egorov/sweep.hpp"

namespace fs = std::filesystem;
using namespace egorov;
using namespace egorov::cli;

namespace {

void print(const CheckOutput& out) {
  for (const auto& r : out.results) std::cout << summary_line(r) << "\n";
}

int kernel_build(unsigned m, unsigned quad, const std::string& path) {
  const KernelPtr k = make_kernel(m, quad);
  nlohmann::json j = *k;
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
    f << j.dump(2) << "\n";
  }
  double worst = 0.0;
  for (double r : k->moment_residuals()) worst = std::max(worst, std::abs(r));
  std::cerr << "kernel m=" << m << " q=" << k->vanishing_order() << " max moment residual=" << worst << "\n";
  return 0;
}

int run(const std::string& path, const std::string& out_dir) {
  const Scenario s = load_scenario(path);
  const CheckOutput out = run_scenario(s);
  const nlohmann::json meta = {{"scenario", s.name},   {"seed", s.seed},   {"m", s.m},
                               {"j_min", s.j_min},     {"j_max", s.j_max}, {"suite_size", s.suite.size()},
                               {"checks", s.checks}};
  write_artifacts(out_dir, s.name, meta, out);
  print(out);
  std::cout << (all_passed(out) ? "PASS" : "FAIL") << " (" << out.results.size() << " checks, artifacts in " << out_dir
            << ")\n";
  return exit_code(out);
}

int verify(const std::string& name, unsigned m, const std::string& kernel_file, const std::string& rho_min,
           std::uint64_t seed, const std::string& out_dir) {
  Scenario s;
  s.name = "verify " + name;
  s.m = m;
  s.seed = seed;
  if (!kernel_file.empty()) s.kernel_file = fs::path(kernel_file);
  try {
    s.j_max = parse_rho_exponent(rho_min);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--rho-min: ") + e.what());
  }
  if (s.j_max < s.j_min + 4) throw ConfigError("--rho-min must be at most 2^-" + std::to_string(s.j_min + 4));
  s.checks = {name};
  const CheckOutput out = run_scenario(s);
  print(out);
  if (!out_dir.empty()) {
    const nlohmann::json meta = {{"check", name}, {"seed", seed}, {"m", m}, {"j_min", s.j_min}, {"j_max", s.j_max}};
    write_artifacts(out_dir, s.name, meta, out);
  }
  return exit_code(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized functions: kernels, scenarios and verification checks"};
  app.require_subcommand(1);

  auto* kernel = app.add_subcommand("kernel", "Kernel artifacts");
  kernel->require_subcommand(1);
  auto* build = kernel->add_subcommand("build", "Solve the moment system and write the kernel as JSON");
  unsigned km = 2, kq = 256;
  std::string kout;
  build->add_option("--m", km, "Number of even moment conditions (vanishing order 2m+1)")->capture_default_str();
  build->add_option("--quad", kq, "Gauss-Legendre nodes for the moment system")->capture_default_str();
  build->add_option("--out", kout, "Output file (stdout when omitted)");

  auto* runc = app.add_subcommand("run", "Run a TOML scenario and write artifacts");
  std::string scenario, run_out = "egorov-ga-out";
  runc->add_option("scenario", scenario, "Scenario file")->required();
  runc->add_option("--out", run_out, "Artifact directory")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Run one named group of checks");
  std::string check, vkernel, rho_min = "2^-16", vout;
  unsigned vm = 2;
  std::uint64_t seed = 1;
  ver->add_option("check", check, "Check group")->required()->check(CLI::IsMember(check_names()));
  ver->add_option("--m", vm, "Kernel moment parameter")->capture_default_str();
  ver->add_option("--kernel", vkernel, "Kernel JSON file (overrides --m)");
  ver->add_option("--rho-min", rho_min, "Smallest rho of the dyadic grid")->capture_default_str();
  ver->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  ver->add_option("--out", vout, "Artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*build) return kernel_build(km, kq, kout);
    if (*runc) return run(scenario, run_out);
    if (*ver) return verify(check, vm, vkernel, rho_min, seed, vout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConditioningError& e) {
    std::cerr << "kernel error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
