#include <fstream>
#include <sstream>

#include "asympl/cli.hpp"
#include "asympl/errors.hpp"

namespace asympl {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

double real_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>()).get_d();
    } catch (const ValidationError& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected a number or a rational string");
}

std::vector<double> reals_from_json(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n) fail(path, "expected " + std::to_string(n) + " values");
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(real_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

double positive(const json& j, const std::string& path, bool allow_zero = false) {
  const double v = real_from_json(j, path);
  if (!(v > 0) && !(allow_zero && v == 0)) fail(path, "must be positive");
  return v;
}

IntegratorConfig integrator_from_json(const json& j, const std::string& path) {
  IntegratorConfig cfg;
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("method")) {
    const std::string m = j["method"].is_string() ? j["method"].get<std::string>() : "";
    if (m == "rk4")
      cfg.method = IntegratorConfig::Method::rk4;
    else if (m == "dop853")
      cfg.method = IntegratorConfig::Method::dop853;
    else
      fail(path + ".method", "expected \"dop853\" or \"rk4\"");
  }
  if (j.contains("rtol")) cfg.rtol = positive(j["rtol"], path + ".rtol");
  if (j.contains("atol")) cfg.atol = positive(j["atol"], path + ".atol");
  if (j.contains("step")) cfg.step = positive(j["step"], path + ".step", true);
  if (j.contains("output_dt")) cfg.output_dt = positive(j["output_dt"], path + ".output_dt", true);
  if (j.contains("max_steps")) cfg.max_steps = j["max_steps"].get<std::size_t>();
  return cfg;
}

ExperimentConfig experiments_from_json(const json& j, std::size_t n, const std::string& path) {
  ExperimentConfig ex;
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("T")) ex.T = positive(j["T"], path + ".T");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(path + ".seed", "expected a non-negative integer");
    ex.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("samples")) {
    if (!j["samples"].is_number_unsigned()) fail(path + ".samples", "expected a non-negative integer");
    ex.samples = j["samples"].get<std::size_t>();
  }
  if (j.contains("I0")) ex.I0 = rational_from_json(j["I0"], path + ".I0");
  if (j.contains("levels")) {
    const json& L = j["levels"];
    if (!L.is_array()) fail(path + ".levels", "expected a list of momentum levels");
    for (std::size_t i = 0; i < L.size(); ++i)
      ex.levels.push_back(rational_vector_from_json(L[i], path + ".levels[" + std::to_string(i) + "]"));
  }
  if (j.contains("section")) {
    const json& s = j["section"];
    const std::string sp = path + ".section";
    if (!s.is_object() || !s.contains("angle")) fail(sp, "expected {angle, value}");
    if (!s["angle"].is_number_integer() || s["angle"].get<long long>() < 1 ||
        s["angle"].get<std::size_t>() > n)
      fail(sp + ".angle", "angle index outside 1.." + std::to_string(n));
    ex.section = Section{s["angle"].get<std::size_t>() - 1,
                         s.contains("value") ? real_from_json(s["value"], sp + ".value") : 0.0};
  }
  if (j.contains("initial_conditions")) {
    const json& ics = j["initial_conditions"];
    if (!ics.is_array()) fail(path + ".initial_conditions", "expected a list");
    for (std::size_t i = 0; i < ics.size(); ++i) {
      const std::string ip = path + ".initial_conditions[" + std::to_string(i) + "]";
      if (!ics[i].is_object() || !ics[i].contains("a") || !ics[i].contains("alpha"))
        fail(ip, "expected {name, a, alpha}");
      InitialCondition ic;
      ic.name = ics[i].value("name", "ic" + std::to_string(i + 1));
      ic.a = reals_from_json(ics[i]["a"], n, ip + ".a");
      ic.alpha = reals_from_json(ics[i]["alpha"], n, ip + ".alpha");
      ex.initial_conditions.push_back(std::move(ic));
    }
  }
  return ex;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ValidationError("syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) fail("$", "configuration must be an object");
  SystemConfig cfg;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name", "expected a string");
    cfg.name = j["name"].get<std::string>();
  }
  if (!j.contains("chart")) fail("$", "missing field 'chart'");
  cfg.chart = chart_from_json(j["chart"], "chart");
  const std::size_t n = cfg.chart.n();
  if (!j.contains("hamiltonian")) fail("$", "missing field 'hamiltonian'");
  cfg.hamiltonian = fourier_from_json(j["hamiltonian"], n, "hamiltonian");
  if (j.contains("split")) {
    const json& s = j["split"];
    if (!s.is_object() || !s.contains("k") || !s["k"].is_number_unsigned() ||
        s["k"].get<std::size_t>() > n)
      fail("split.k", "expected an integer 0..n");
    cfg.split_k = s["k"].get<std::size_t>();
  }
  if (j.contains("integrator")) cfg.integrator = integrator_from_json(j["integrator"], "integrator");
  if (j.contains("experiments")) cfg.experiments = experiments_from_json(j["experiments"], n, "experiments");
  for (std::size_t i = 0; i < cfg.experiments.levels.size(); ++i)
    if (cfg.split_k && cfg.experiments.levels[i].size() != *cfg.split_k)
      fail("experiments.levels[" + std::to_string(i) + "]", "level length differs from split.k");
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open configuration file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json config_to_json(const SystemConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["chart"] = to_json(cfg.chart);
  j["hamiltonian"] = to_json(cfg.hamiltonian);
  if (cfg.split_k) j["split"] = {{"k", *cfg.split_k}};
  const IntegratorConfig& ic = cfg.integrator;
  j["integrator"] = {{"method", ic.method == IntegratorConfig::Method::rk4 ? "rk4" : "dop853"},
                     {"rtol", ic.rtol},
                     {"atol", ic.atol},
                     {"step", ic.step},
                     {"output_dt", ic.output_dt}};
  const ExperimentConfig& ex = cfg.experiments;
  json e;
  e["T"] = ex.T;
  e["seed"] = ex.seed;
  e["samples"] = ex.samples;
  if (ex.I0) e["I0"] = to_string(*ex.I0);
  if (!ex.levels.empty()) {
    json L = json::array();
    for (const auto& c : ex.levels) L.push_back(to_json(c));
    e["levels"] = L;
  }
  if (ex.section) e["section"] = {{"angle", ex.section->angle + 1}, {"value", ex.section->value}};
  json ics = json::array();
  for (const auto& c : ex.initial_conditions) ics.push_back({{"name", c.name}, {"a", c.a}, {"alpha", c.alpha}});
  e["initial_conditions"] = ics;
  j["experiments"] = e;
  return j;
}

void save_config(const SystemConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError(path + ": cannot write configuration file");
  out << config_to_json(cfg).dump(2) << "\n";
}

}  // namespace asympl
