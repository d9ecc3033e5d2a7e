#include "egorov/cli/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <toml.hpp>

namespace egorov::cli {

namespace {

void allow_keys(const toml::table& t, std::initializer_list<std::string_view> keys, const std::string& where) {
  for (const auto& [k, v] : t)
    if (std::find(keys.begin(), keys.end(), k.str()) == keys.end())
      throw ConfigError("unknown key '" + std::string(k.str()) + "' in " + where);
}

double number(const toml::node& n, const std::string& what) {
  if (auto v = n.value<double>()) return *v;
  throw ConfigError(what + " must be a number");
}

std::vector<double> numbers(const toml::node_view<const toml::node>& v, const std::string& what) {
  const auto* arr = v.as_array();
  if (!arr) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& n : *arr) out.push_back(number(n, what));
  return out;
}

Domain parse_domain(const toml::node_view<const toml::node>& v) {
  if (!v) return Domain::whole(1);
  if (auto s = v.value<std::string>()) {
    if (s->rfind("whole", 0) == 0) {
      const std::size_t d = s->size() > 5 ? std::stoul(s->substr(s->find(':') + 1)) : 1;
      return Domain::whole(d);
    }
    throw ConfigError("domain must be \"whole\", \"whole:<d>\" or a table");
  }
  const auto* tbl = v.as_table();
  if (!tbl) throw ConfigError("domain must be \"whole\" or a table with boxes");
  allow_keys(*tbl, {"boxes"}, "domain");
  const auto* boxes = (*tbl)["boxes"].as_array();
  if (!boxes || boxes->empty()) throw ConfigError("domain.boxes must be a nonempty array");
  std::vector<Box> out;
  std::size_t dim = 0;
  for (const auto& b : *boxes) {
    const auto* axes = b.as_array();
    if (!axes) throw ConfigError("each box is an array of [lo, hi] pairs");
    Box box;
    for (const auto& a : *axes) {
      const auto* pair = a.as_array();
      if (!pair || pair->size() != 2) throw ConfigError("box axes are [lo, hi] pairs");
      auto end = [](const toml::node& n) {
        if (auto s = n.value<std::string>()) {
          if (*s == "inf" || *s == "+inf") return kInf;
          if (*s == "-inf") return -kInf;
        }
        return number(n, "box endpoint");
      };
      box.axes.push_back(Interval{end(*pair->get(0)), end(*pair->get(1))});
    }
    if (dim == 0) dim = box.axes.size();
    out.push_back(std::move(box));
  }
  try {
    return Domain(dim, std::move(out));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid domain: ") + e.what());
  }
}

StandardFunction smooth_function(const std::string& fn, std::size_t dim) {
  Smooth1D g;
  if (fn == "sin")
    g = Smooth1D::sin();
  else if (fn == "cos")
    g = Smooth1D::cos();
  else if (fn == "exp")
    g = Smooth1D::exp();
  else if (fn == "bump")
    g = Smooth1D::bump(0.0, 0.5);
  else
    throw ConfigError("unknown smooth function '" + fn + "'");
  return StandardFunction::on_axis(dim, 0, g);
}

CatalogueEntry parse_entry(const toml::table& t, const Domain& dom) {
  allow_keys(t, {"name", "kind", "at", "function", "coefficients", "derivative", "power"}, "catalogue entry");
  CatalogueEntry e{{}, Distribution{dom, {}}, 1};
  const std::size_t d = dom.dim();
  e.name = t["name"].value_or(std::string{});
  const std::string kind = t["kind"].value_or(std::string{});
  if (e.name.empty()) throw ConfigError("catalogue entries need a name");
  try {
    if (kind == "dirac") {
      std::vector<double> at = t["at"] ? numbers(t["at"], "at") : std::vector<double>(d, 0.0);
      e.T = dirac(dom, at);
    } else if (kind == "heaviside") {
      e.T = schwartz_embed(Density::heaviside(d, 0, t["at"].value_or(0.0)), dom);
    } else if (kind == "smooth") {
      e.T = schwartz_embed(Density::from_standard(smooth_function(t["function"].value_or(std::string{}), d)), dom);
    } else if (kind == "polynomial") {
      if (d != 1) throw ConfigError("polynomial catalogue entries are one-dimensional");
      e.T = schwartz_embed(Density::polynomial(Polynomial::univariate(numbers(t["coefficients"], "coefficients"))), dom);
    } else {
      throw ConfigError("catalogue entry '" + e.name + "' has unknown kind '" + kind + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError("catalogue entry '" + e.name + "': " + ex.what());
  }
  if (t["derivative"]) {
    std::vector<unsigned> a;
    for (double v : numbers(t["derivative"], "derivative")) {
      if (v < 0 || v != std::floor(v)) throw ConfigError("derivative entries are nonnegative integers");
      a.push_back(static_cast<unsigned>(v));
    }
    if (a.size() != d) throw ConfigError("derivative multi-index has the wrong dimension");
    e.T = distr_derive(e.T, MultiIndex(a));
  }
  const auto p = t["power"].value_or(int64_t{1});
  if (p < 1 || p > 4) throw ConfigError("power must lie in 1..4");
  e.power = static_cast<unsigned>(p);
  return e;
}

std::vector<TestFunction> parse_suite(const toml::node_view<const toml::node>& v, std::size_t dim) {
  if (!v) return default_test_suite(dim);
  const auto* t = v.as_table();
  if (!t) throw ConfigError("suite must be a table");
  allow_keys(*t, {"kind", "bumps"}, "suite");
  const std::string kind = (*t)["kind"].value_or(std::string("default"));
  if (kind == "default") return default_test_suite(dim);
  if (kind == "bumps") {
    if (dim != 1) throw ConfigError("bump suites are one-dimensional");
    const auto* arr = (*t)["bumps"].as_array();
    if (!arr || arr->empty()) throw ConfigError("suite.bumps must be a nonempty array of [center, scale]");
    std::vector<TestFunction> out;
    for (const auto& b : *arr) {
      const auto* pair = b.as_array();
      if (!pair || pair->size() != 2) throw ConfigError("suite.bumps entries are [center, scale]");
      const double c = number(*pair->get(0), "bump center"), s = number(*pair->get(1), "bump scale");
      if (!(s > 0)) throw ConfigError("bump scale must be positive");
      out.push_back(bump_test_function(c, s));
    }
    return out;
  }
  throw ConfigError("unknown suite kind '" + kind + "'");
}

void read_tol(const toml::table& t, const char* key, double& slot) {
  if (!t[key]) return;
  const double v = number(*t.get(key), std::string("tolerances.") + key);
  if (!(v > 0.0)) throw ConfigError(std::string("tolerances.") + key + " must be positive");
  slot = v;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

}  // namespace

Scenario parse_scenario(const std::string& toml_text, const std::filesystem::path& base_dir) {
  toml::table parsed;
  try {
    parsed = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML parse error: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(os.str());
  }
  const toml::table& root = parsed;
  allow_keys(root, {"name", "seed", "kernel", "domain", "rho", "suite", "tolerances", "catalogue", "checks"}, "scenario");
  Scenario s;
  s.name = root["name"].value_or(std::string("scenario"));
  const auto seed = root["seed"].value_or(int64_t{1});
  if (seed < 0) throw ConfigError("seed must be nonnegative");
  s.seed = static_cast<std::uint64_t>(seed);

  if (const auto* k = root["kernel"].as_table()) {
    allow_keys(*k, {"m", "quad", "file"}, "kernel");
    const auto m = (*k)["m"].value_or(int64_t{2});
    const auto q = (*k)["quad"].value_or(int64_t{256});
    if (m < 0 || m > static_cast<int64_t>(kMaxEvenMoments)) throw ConfigError("kernel.m out of range");
    if (q < 8) throw ConfigError("kernel.quad must be at least 8");
    s.m = static_cast<unsigned>(m);
    s.quad = static_cast<unsigned>(q);
    if (auto f = (*k)["file"].value<std::string>()) {
      std::filesystem::path p(*f);
      s.kernel_file = p.is_absolute() ? p : base_dir / p;
    }
  }

  s.domain = parse_domain(root["domain"]);

  if (const auto* r = root["rho"].as_table()) {
    allow_keys(*r, {"j_min", "j_max", "rho_min"}, "rho");
    s.j_min = static_cast<int>((*r)["j_min"].value_or(int64_t{8}));
    s.j_max = static_cast<int>((*r)["j_max"].value_or(int64_t{16}));
    if (auto rm = (*r)["rho_min"].value<std::string>()) {
      try {
        s.j_max = parse_rho_exponent(*rm);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("rho.rho_min: ") + e.what());
      }
    }
    if (s.j_min < 1 || s.j_max < s.j_min + 4 || s.j_max > 40)
      throw ConfigError("rho grid needs 1 <= j_min and j_min + 4 <= j_max <= 40");
  }

  s.suite = parse_suite(root["suite"], s.domain.dim());

  if (const auto* t = root["tolerances"].as_table()) {
    allow_keys(*t,
               {"reproduction", "product", "pairing", "order_margin", "derivative", "cutoff", "power_exponent",
                "power_coefficient", "association", "pushforward"},
               "tolerances");
    read_tol(*t, "reproduction", s.tol.reproduction);
    read_tol(*t, "product", s.tol.product);
    read_tol(*t, "pairing", s.tol.pairing);
    read_tol(*t, "order_margin", s.tol.order_margin);
    read_tol(*t, "derivative", s.tol.derivative);
    read_tol(*t, "cutoff", s.tol.cutoff);
    read_tol(*t, "power_exponent", s.tol.power_exponent);
    read_tol(*t, "power_coefficient", s.tol.power_coefficient);
    read_tol(*t, "association", s.tol.association);
    read_tol(*t, "pushforward", s.tol.pushforward);
  }

  if (const auto* arr = root["catalogue"].as_array())
    for (const auto& n : *arr) {
      const auto* t = n.as_table();
      if (!t) throw ConfigError("catalogue entries must be tables");
      s.catalogue.push_back(parse_entry(*t, s.domain));
    }

  if (root["checks"]) {
    const auto* arr = root["checks"].as_array();
    if (!arr) throw ConfigError("checks must be an array of names");
    for (const auto& n : *arr) {
      auto name = n.value<std::string>();
      if (!name) throw ConfigError("checks must be an array of names");
      if (!is_check_name(*name)) throw ConfigError("unknown check '" + *name + "'");
      s.checks.push_back(*name);
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read scenario " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

KernelPtr scenario_kernel(const Scenario& s) {
  if (!s.kernel_file) return make_kernel(s.m, s.quad);
  std::ifstream f(*s.kernel_file);
  if (!f) throw ConfigError("kernel file not found: " + s.kernel_file->string());
  try {
    return std::make_shared<const Kernel>(kernel_from_json(nlohmann::json::parse(f)));
  } catch (const std::exception& e) {
    throw ConfigError("malformed kernel file " + s.kernel_file->string() + ": " + e.what());
  }
}

CheckOutput run_scenario(const Scenario& s) {
  CheckConfig cfg;
  cfg.kernel = scenario_kernel(s);
  cfg.j_min = s.j_min;
  cfg.j_max = s.j_max;
  cfg.seed = s.seed;
  cfg.tol = s.tol;

  CheckOutput out;
  const auto grid = dyadic_rho_grid(s.j_min, s.j_max);
  for (const auto& e : s.catalogue) {
    GenFunc f = iota_embed(e.T, cfg.kernel);
    for (unsigned p = 1; p < e.power; ++p) f = f * iota_embed(e.T, cfg.kernel);
    nlohmann::json fits = nlohmann::json::object();
    double worst = 0.0;
    bool reliable = true;
    for (const auto& phi : s.suite) {
      AsymptoticFit fit;
      try {
        fit = pair(f, phi, grid);
      } catch (const std::invalid_argument& ex) {
        throw ConfigError("catalogue entry '" + e.name + "' against " + phi.id + ": " + ex.what());
      }
      for (const auto& [rho, v] : fit.samples) out.sweeps.push_back({e.name, phi.id, rho, v});
      nlohmann::json jf = fit;
      reliable = reliable && fit.reliable;
      if (e.power == 1) {
        const Complex exact = pair_classical(e.T, phi.phi, phi.support);
        const double err = std::abs(fit.coefficient(Rational(0)) - exact);
        worst = std::max(worst, err);
        jf["exact"] = {exact.real(), exact.imag()};
        jf["standard_part_error"] = err;
      }
      fits[phi.id] = std::move(jf);
    }
    out.fits[e.name] = std::move(fits);
    CheckResult r;
    r.key = "catalogue " + e.name;
    if (e.power == 1) {
      r.description = "st <iota(T), phi> matches the classical pairing";
      r.passed = worst <= s.tol.pairing;
      r.metric = "max_err";
      r.value = worst;
      r.bound = format_value(s.tol.pairing);
    } else {
      r.description = "asymptotic fit of <iota(T)^" + std::to_string(e.power) + ", phi> is reliable";
      r.passed = reliable;
      r.metric = "reliable";
      r.value = reliable ? 1.0 : 0.0;
      r.bound = "1";
    }
    out.results.push_back(std::move(r));
  }
  for (const auto& c : s.checks) run_check(c, cfg, out);
  return out;
}

bool all_passed(const CheckOutput& out) {
  return std::all_of(out.results.begin(), out.results.end(), [](const CheckResult& r) { return r.passed; });
}

int exit_code(const CheckOutput& out) { return all_passed(out) ? 0 : 1; }

std::string summary_line(const CheckResult& r) {
  return r.key + ": " + (r.passed ? "PASS" : "FAIL") + " " + r.metric + "=" + format_value(r.value) + " (" + r.bound +
         ")";
}

std::string summary_markdown(const std::string& title, const CheckOutput& out) {
  std::ostringstream os;
  os << "# " << title << "\n\n";
  os << "| check | status | " << "metric | value | bound | description |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& r : out.results)
    os << "| " << r.key << " | " << (r.passed ? "PASS" : "FAIL") << " | " << r.metric << " | " << format_value(r.value)
       << " | " << r.bound << " | " << r.description << " |\n";
  os << "\n" << (all_passed(out) ? "All checks passed." : "Some checks failed.") << "\n";
  return os.str();
}

nlohmann::json summary_json(const std::string& title, const nlohmann::json& meta, const CheckOutput& out) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : out.results)
    checks.push_back({{"key", r.key},
                      {"description", r.description},
                      {"status", r.passed ? "PASS" : "FAIL"},
                      {"metric", r.metric},
                      {"value", r.value},
                      {"bound", r.bound},
                      {"detail", r.detail}});
  return {{"title", title}, {"meta", meta}, {"passed", all_passed(out)}, {"checks", checks}};
}

void write_artifacts(const std::filesystem::path& dir, const std::string& title, const nlohmann::json& meta,
                     const CheckOutput& out) {
  std::filesystem::create_directories(dir);
  std::string csv = "case,phi_id,rho,value_re,value_im\n";
  for (const auto& r : out.sweeps)
    csv += csv_field(r.case_id) + "," + csv_field(r.phi_id) + "," + csv_number(r.rho) + "," +
           csv_number(r.value.real()) + "," + csv_number(r.value.imag()) + "\n";
  write_file(dir / "sweeps.csv", csv);
  write_file(dir / "fits.json", out.fits.dump(2) + "\n");
  write_file(dir / "summary.md", summary_markdown(title, out));
  write_file(dir / "summary.json", summary_json(title, meta, out).dump(2) + "\n");
}

}  // namespace egorov::cli
