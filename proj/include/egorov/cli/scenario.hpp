#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "egorov/cli/checks.hpp"
#include "egorov/dist.hpp"
#include "egorov/weak.hpp"

namespace egorov::cli {

/// Unreadable or invalid configuration, or a missing kernel file (exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CatalogueEntry {
  std::string name;
  Distribution T;
  /// iota(T)^power is paired against the suite.
  unsigned power = 1;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  unsigned m = 2;
  unsigned quad = 256;
  std::optional<std::filesystem::path> kernel_file;
  Domain domain = Domain::whole(1);
  int j_min = 8;
  int j_max = 16;
  std::vector<TestFunction> suite;
  Tolerances tol{};
  std::vector<CatalogueEntry> catalogue;
  std::vector<std::string> checks;
};

/// Parses a TOML scenario. Relative kernel paths resolve against the file's
/// directory. Throws ConfigError.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& toml_text, const std::filesystem::path& base_dir = ".");

/// Builds the kernel (or loads kernel_file). Throws ConfigError when the file
/// is missing or malformed.
KernelPtr scenario_kernel(const Scenario& s);

/// Catalogue sweeps followed by the requested checks.
CheckOutput run_scenario(const Scenario& s);

bool all_passed(const CheckOutput& out);
/// 0 when every check passed, 1 otherwise.
int exit_code(const CheckOutput& out);

/// One line per check: "key: PASS metric=value (bound)".
std::string summary_line(const CheckResult& r);
std::string summary_markdown(const std::string& title, const CheckOutput& out);
nlohmann::json summary_json(const std::string& title, const nlohmann::json& meta, const CheckOutput& out);

/// Writes sweeps.csv, fits.json, summary.md and summary.json into dir.
void write_artifacts(const std::filesystem::path& dir, const std::string& title, const nlohmann::json& meta,
                     const CheckOutput& out);

}  // namespace egorov::cli
