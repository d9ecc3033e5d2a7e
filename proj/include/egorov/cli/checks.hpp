#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "egorov/mollifier.hpp"
#include "egorov/scalars.hpp"

namespace egorov::cli {

struct Tolerances {
  double reproduction = 1e-9;
  double product = 1e-9;
  double pairing = 1e-7;
  /// Allowed shortfall of the fitted error order below q + 1.
  double order_margin = 0.5;
  double derivative = 1e-8;
  double cutoff = 1e-12;
  double power_exponent = 0.1;
  double power_coefficient = 1e-4;
  double association = 1e-6;
  double pushforward = 1e-6;
};

struct CheckConfig {
  KernelPtr kernel;
  int j_min = 8;
  int j_max = 16;
  std::uint64_t seed = 1;
  Tolerances tol{};
};

struct CheckResult {
  std::string key;
  std::string description;
  bool passed = false;
  std::string metric;
  double value = 0.0;
  std::string bound;
  nlohmann::json detail = nlohmann::json::object();
};

struct SweepRow {
  std::string case_id;
  std::string phi_id;
  double rho = 0.0;
  Complex value;
};

struct CheckOutput {
  std::vector<CheckResult> results;
  std::vector<SweepRow> sweeps;
  nlohmann::json fits = nlohmann::json::object();
};

/// Names accepted by run_check.
const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);

/// Runs one named group of checks and appends to out.
void run_check(const std::string& name, const CheckConfig& cfg, CheckOutput& out);

/// "2^-16", "0.0000152587890625" or "1e-5" to the dyadic exponent j with
/// 2^-j closest to the value.
int parse_rho_exponent(const std::string& s);

}  // namespace egorov::cli
