#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "egorov/cli/scenario.hpp"

using namespace egorov;
using namespace egorov::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("egorov-cli-" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + EGOROV_GA_BINARY + "' " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, RhoExponentParsing) {
  EXPECT_EQ(parse_rho_exponent("2^-16"), 16);
  EXPECT_EQ(parse_rho_exponent("0.0000152587890625"), 16);
  EXPECT_EQ(parse_rho_exponent("1e-3"), 10);
  EXPECT_THROW(parse_rho_exponent("2"), std::invalid_argument);
  EXPECT_THROW(parse_rho_exponent("banana"), std::invalid_argument);
}

TEST(Cli, CheckRegistry) {
  for (const char* n : {"scalars", "polynomials", "embedding", "derivatives", "association", "support", "pushforward",
                        "regular"})
    EXPECT_TRUE(is_check_name(n)) << n;
  EXPECT_FALSE(is_check_name("everything"));
}

TEST(Cli, ParsesScenario) {
  const Scenario s = parse_scenario(R"(
name = "t"
seed = 4
domain = { boxes = [[[-1.0, 1.0], ["-inf", "inf"]]] }
checks = ["scalars"]

[kernel]
m = 3

[rho]
j_min = 6
j_max = 12

[tolerances]
pairing = 1e-6

[[catalogue]]
name = "dx delta"
kind = "dirac"
at = [0.0, 0.5]
derivative = [1, 0]
)");
  EXPECT_EQ(s.name, "t");
  EXPECT_EQ(s.seed, 4u);
  EXPECT_EQ(s.m, 3u);
  EXPECT_EQ(s.j_min, 6);
  EXPECT_EQ(s.j_max, 12);
  EXPECT_EQ(s.domain.dim(), 2u);
  EXPECT_EQ(s.domain.boxes()[0].axes[1].hi, kInf);
  EXPECT_DOUBLE_EQ(s.tol.pairing, 1e-6);
  ASSERT_EQ(s.catalogue.size(), 1u);
  EXPECT_EQ(s.catalogue[0].T.terms[0].alpha, (MultiIndex{1, 0}));
  EXPECT_EQ(s.checks, std::vector<std::string>{"scalars"});
}

TEST(Cli, RejectsBadScenarios) {
  EXPECT_THROW(parse_scenario("name = "), ConfigError);
  EXPECT_THROW(parse_scenario("nmae = \"x\""), ConfigError);
  EXPECT_THROW(parse_scenario("checks = [\"nope\"]"), ConfigError);
  EXPECT_THROW(parse_scenario("[rho]\nj_min = 10\nj_max = 8"), ConfigError);
  EXPECT_THROW(parse_scenario("[[catalogue]]\nname = \"x\"\nkind = \"unicorn\""), ConfigError);
  EXPECT_THROW(parse_scenario("[kernel]\nm = 2\nseed = 3"), ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.toml"), ConfigError);
  Scenario s = parse_scenario("name = \"k\"");
  s.kernel_file = "/nonexistent/kernel.json";
  EXPECT_THROW(scenario_kernel(s), ConfigError);
}

TEST(Cli, SummaryLineFormat) {
  CheckResult r;
  r.key = "polynomial-reproduction";
  r.passed = true;
  r.metric = "max_abs_error";
  r.value = 2.5e-14;
  r.bound = "<= 1e-09";
  const std::string line = summary_line(r);
  EXPECT_EQ(line.rfind("polynomial-reproduction: PASS", 0), 0u) << line;
  EXPECT_NE(line.find("max_abs_error="), std::string::npos);
}

TEST(Cli, WritesArtifacts) {
  CheckOutput out;
  CheckResult r;
  r.key = "k";
  r.passed = true;
  out.results.push_back(r);
  out.sweeps.push_back({"case, with comma", "phi", 0.25, Complex(1.5, -2.0)});
  const fs::path dir = scratch("artifacts");
  write_artifacts(dir, "title", {{"seed", 1}}, out);
  for (const char* f : {"sweeps.csv", "fits.json", "summary.md", "summary.json"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
  const std::string csv = slurp(dir / "sweeps.csv");
  EXPECT_EQ(csv.rfind("case,phi_id,rho,value_re,value_im\n", 0), 0u);
  EXPECT_NE(csv.find("\"case, with comma\",phi,0.25,1.5,-2"), std::string::npos) << csv;
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_TRUE(j.at("passed").get<bool>());
  fs::remove_all(dir.parent_path());
}

TEST(Cli, ExitCodes) {
  const fs::path bad = scratch("bad.toml");
  std::ofstream(bad) << "domain = 12\n";
  const fs::path out = scratch("out");
  EXPECT_EQ(run_cli("run '" + bad.string() + "' --out '" + out.string() + "'"), 2);
  EXPECT_EQ(run_cli("verify unknown-check"), 2);
  EXPECT_EQ(run_cli("verify scalars --rho-min 3"), 2);
  EXPECT_EQ(run_cli("verify scalars --kernel /nonexistent.json"), 2);
  EXPECT_EQ(run_cli("kernel build --m 12 --out '" + scratch("k.json").string() + "'"), 2);
  EXPECT_EQ(run_cli("verify scalars"), 0);
  EXPECT_EQ(run_cli("kernel build --m 3 --out '" + scratch("k3.json").string() + "'"), 0);
  EXPECT_EQ(run_cli("verify polynomials --kernel '" + scratch("k3.json").string() + "'"), 0);
  fs::remove_all(bad.parent_path());
}

TEST(Cli, ShippedScenarioParses) {
  const Scenario s = load_scenario(fs::path(EGOROV_SCENARIO_DIR) / "desk.toml");
  EXPECT_EQ(s.name, "desk");
  EXPECT_EQ(s.checks.size(), check_names().size());
  EXPECT_EQ(s.catalogue.size(), 5u);
}
