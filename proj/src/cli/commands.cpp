#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "asympl/cli.hpp"
#include "asympl/errors.hpp"
#include "asympl/normalize.hpp"
#include "asympl/reduction.hpp"
#include "asympl/spectra.hpp"

namespace asympl {

namespace {

namespace fs = std::filesystem;

// Chaos-indicator thresholds (defaults, reported alongside every estimate).
constexpr double kMleIntegrableMax = 0.005;
constexpr double kMleChaoticMin = 0.01;
// Section shape: a KAM curve is a graph over the angle (tiny residual); a
// chaotic orbit covers a sizable share of the (angle, action) grid.
constexpr double kCurveResidualMax = 0.01;
constexpr double kAreaOccupancyMin = 0.4;
constexpr std::size_t kMinSectionPoints = 200;

std::string out_path(const CommandOptions& opts, const std::string& file) {
  fs::create_directories(opts.out_dir);
  return (fs::path(opts.out_dir) / file).string();
}

json witness_json(const ClassificationWitness& w) {
  json point = json::array();
  for (const auto& x : w.point) point.push_back(to_string(x));
  return {{"nu", w.nu},        {"i", w.i + 1},          {"j", w.j + 1},
          {"point", point},    {"value", to_string(w.value)},
          {"part", w.sine_part ? "sin" : "cos"}, {"description", w.describe()}};
}

json genericity_json(const GenericityVerdict& v) {
  json dirs = json::array();
  for (const auto& d : v.directions)
    dirs.push_back({{"direction", d.direction}, {"status", to_string(d.status)}, {"certificate", d.certificate}});
  return {{"condition", to_string(v.condition)}, {"overall", to_string(v.overall())}, {"directions", dirs}};
}

json ctensor_json(const CTensor& C) {
  json entries = json::array();
  for (const auto& [ijk, p] : C.entries())
    entries.push_back({{"i", ijk[0] + 1}, {"j", ijk[1] + 1}, {"k", ijk[2] + 1}, {"poly", p.to_string()}});
  return {{"identically_zero", C.is_zero()}, {"entries", entries}};
}

json lattice_json(const LatticeNormalization& L) {
  json basis = json::array(), completion = json::array();
  for (const auto& u : L.saturation_basis) basis.push_back(u);
  for (const auto& u : L.completion) completion.push_back(u);
  return {{"r", L.r}, {"k", L.k()},          {"M", to_json(L.M)}, {"M_inv", to_json(L.M_inv)},
          {"saturation_basis", basis}, {"completion", completion}};
}

IntegratorConfig integrator_for(const SystemConfig& cfg, const CommandOptions& opts) {
  IntegratorConfig ic = cfg.integrator;
  if (opts.tol) ic.rtol = ic.atol = *opts.tol;
  return ic;
}

double duration_for(const SystemConfig& cfg, const CommandOptions& opts) {
  return opts.T ? *opts.T : cfg.experiments.T;
}

// Initial conditions mapped through a linear action-angle change (a -> Z a, alpha -> Z^{-T} alpha).
std::vector<InitialCondition> transform_ics(const std::vector<InitialCondition>& ics, const AATransform& T) {
  std::vector<InitialCondition> out;
  for (const auto& ic : ics) {
    InitialCondition m{ic.name, transform_actions(T, ic.a), transform_angles(T, ic.a, ic.alpha)};
    out.push_back(std::move(m));
  }
  return out;
}

struct Split {
  AlmostSymplecticChart chart;
  FourierFunction F;
  NormalizedSplit split;
  std::optional<NormalizedSystem> normalized;
};

// Uses the config's own split when given, otherwise normalizes first.
Split split_for(const SystemConfig& cfg) {
  if (cfg.split_k) {
    return {cfg.chart, cfg.hamiltonian, NormalizedSplit{cfg.chart.n(), *cfg.split_k}, std::nullopt};
  }
  NormalizedSystem ns = normalize_hamiltonian(cfg.chart, cfg.hamiltonian);
  NormalizedSplit sp = NormalizedSplit::of(ns);
  return {ns.chart, ns.F, sp, std::move(ns)};
}

std::vector<std::pair<std::string, FourierFunction>> monitors_for(const SystemConfig& cfg) {
  const std::size_t n = cfg.chart.n();
  std::vector<std::pair<std::string, FourierFunction>> mons{{"F", cfg.hamiltonian}};
  if (!is_fully_hamiltonian(cfg.chart, cfg.hamiltonian)) return mons;
  std::size_t r = 0;
  IntegerMatrix M = IntegerMatrix::identity(n);
  if (cfg.split_k) {
    r = n - *cfg.split_k;
  } else {
    const LatticeNormalization L = saturate_and_complete(spectrum(cfg.hamiltonian).support, n);
    r = L.r;
    M = L.M;
  }
  // J_m = (M a)_{r+m}: first integrals of any psi-independent Hamiltonian.
  for (std::size_t m = r; m < n; ++m) {
    Polynomial J(n);
    for (std::size_t j = 0; j < n; ++j)
      if (M(m, j) != 0) J += Polynomial::variable(n, j) * Rational(M(m, j));
    mons.emplace_back("J_" + std::to_string(m - r + 1), FourierFunction::basic(J));
  }
  return mons;
}

void write_csv(const std::string& path, const Trajectory& traj, bool wrap) {
  std::ofstream out(path);
  if (!out) throw ValidationError(path + ": cannot write trajectory file");
  const std::size_t n = traj.n;
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",a_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",alpha_" << i;
  for (const auto& m : traj.monitor_names) out << "," << m;
  out << "\n" << std::setprecision(17);
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    const auto x = wrap ? wrap_angles(traj.states[s], n) : traj.states[s];
    out << traj.times[s];
    for (double v : x) out << "," << v;
    for (double v : traj.monitors[s]) out << "," << v;
    out << "\n";
  }
}

void write_section_csv(const std::string& path, const SectionPoints& pts, std::size_t n) {
  std::ofstream out(path);
  if (!out) throw ValidationError(path + ": cannot write section file");
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",a_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",alpha_" << i;
  out << "\n" << std::setprecision(17);
  for (std::size_t s = 0; s < pts.times.size(); ++s) {
    out << pts.times[s];
    for (double v : wrap_angles(pts.states[s], n)) out << "," << v;
    out << "\n";
  }
}

std::vector<double> state_of(const InitialCondition& ic) {
  std::vector<double> x = ic.a;
  x.insert(x.end(), ic.alpha.begin(), ic.alpha.end());
  return x;
}

}  // namespace

Section parse_section_flag(const std::string& text) {
  const auto eq = text.find('=');
  const std::string lhs = text.substr(0, eq);
  const std::string prefix = "alpha_";
  if (eq == std::string::npos || lhs.rfind(prefix, 0) != 0)
    throw ValidationError("--poincare expects alpha_i=v, got '" + text + "'");
  std::size_t idx = 0;
  try {
    idx = std::stoul(lhs.substr(prefix.size()));
  } catch (const std::exception&) {
    throw ValidationError("--poincare: bad angle index in '" + text + "'");
  }
  if (idx == 0) throw ValidationError("--poincare: angle indices start at 1");
  double value = 0;
  try {
    value = parse_rational(text.substr(eq + 1)).get_d();
  } catch (const ValidationError&) {
    try {
      value = std::stod(text.substr(eq + 1));
    } catch (const std::exception&) {
      throw ValidationError("--poincare: bad section value in '" + text + "'");
    }
  }
  return Section{idx - 1, value};
}

std::vector<RationalVector> parse_levels_flag(const std::string& text) {
  std::vector<RationalVector> levels;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    RationalVector c;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) c.push_back(parse_rational(item));
    levels.push_back(std::move(c));
  }
  return levels;
}

json cmd_check(const SystemConfig& cfg, const CommandOptions& opts) {
  const AlmostSymplecticChart& chart = cfg.chart;
  const CTensor C = c_tensor(chart);
  json rep;
  rep["command"] = "check";
  rep["system"] = cfg.name;
  rep["n"] = chart.n();
  rep["c_tensor"] = ctensor_json(C);
  if (C.is_zero()) rep["message"] = "C == 0: symplectic; every F fully-Hamiltonian";

  const std::uint64_t seed = opts.seed ? *opts.seed : cfg.experiments.seed;
  const RankBoundReport rb = verify_rank_bound(chart, cfg.experiments.samples, seed);
  json hist = json::object();
  for (const auto& [dim, count] : rb.kernel_dimensions) hist[std::to_string(dim)] = count;
  rep["kernel"] = {{"samples", rb.samples}, {"seed", seed}, {"nonzero_points", rb.nonzero_points},
                   {"violations", rb.violations}, {"dimension_histogram", hist}};

  const FullHamiltonianVerdict v = is_fully_hamiltonian(chart, C, cfg.hamiltonian);
  rep["fully_hamiltonian"] = v.accepted;
  if (v.witness) rep["witness"] = witness_json(*v.witness);
  rep["FG1"] = genericity_json(genericity_check(chart, cfg.hamiltonian, GenericityCondition::FG1));
  rep["FG2"] = genericity_json(genericity_check(chart, cfg.hamiltonian, GenericityCondition::FG2));
  return rep;
}

json cmd_normalize(const SystemConfig& cfg, const CommandOptions& opts) {
  NormalizedSystem ns = normalize_hamiltonian(cfg.chart, cfg.hamiltonian);
  SystemConfig out = cfg;
  out.name = cfg.name + "-normalized";
  out.chart = ns.chart;
  out.hamiltonian = ns.F;
  out.split_k = ns.k;
  out.experiments.initial_conditions = transform_ics(cfg.experiments.initial_conditions, ns.transform);
  if (out.experiments.section) out.experiments.section.reset();
  const std::string file = out_path(opts, out.name + ".cfg");
  save_config(out, file);

  json rep;
  rep["command"] = "normalize";
  rep["system"] = cfg.name;
  rep["lattice"] = lattice_json(ns.lattice);
  rep["r"] = ns.r;
  rep["k"] = ns.k;
  rep["hamiltonian"] = ns.F.to_string();
  rep["config"] = file;
  return rep;
}

json cmd_reduce(const SystemConfig& cfg, const CommandOptions& opts) {
  Split s = split_for(cfg);
  const auto& levels = opts.levels ? *opts.levels : cfg.experiments.levels;
  if (levels.empty()) throw RegimeError("no momentum levels given; pass --levels c1,c2,...");
  if (s.split.r() == 0) throw RegimeError("r = 0: the flow is vertical, there is nothing to reduce");

  std::vector<InitialCondition> ics = cfg.experiments.initial_conditions;
  if (s.normalized) ics = transform_ics(ics, s.normalized->transform);
  json rep;
  rep["command"] = "reduce";
  rep["system"] = cfg.name;
  rep["r"] = s.split.r();
  rep["k"] = s.split.k;
  if (s.normalized) rep["lattice"] = lattice_json(s.normalized->lattice);
  json out_levels = json::array();
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const ReducedSystem red = reduce(s.chart, s.F, s.split, levels[l]);
    SystemConfig rc = cfg;
    rc.name = cfg.name + "-reduced-" + std::to_string(l + 1);
    rc.chart = red.chart;
    rc.hamiltonian = red.f_c;
    rc.split_k.reset();
    rc.experiments.levels.clear();
    rc.experiments.section.reset();
    rc.experiments.initial_conditions.clear();
    for (const auto& ic : ics)
      rc.experiments.initial_conditions.push_back(
          {ic.name, {ic.a.begin(), ic.a.begin() + static_cast<std::ptrdiff_t>(red.r)},
           {ic.alpha.begin(), ic.alpha.begin() + static_cast<std::ptrdiff_t>(red.r)}});
    const std::string file = out_path(opts, rc.name + ".cfg");
    save_config(rc, file);
    json a_ji = json::array();
    for (const auto& row : red.A_JI) {
      json jr = json::array();
      for (const auto& p : row) jr.push_back(p.to_string());
      a_ji.push_back(jr);
    }
    out_levels.push_back({{"c", to_json(red.c)},
                          {"config", file},
                          {"f_c", red.f_c.to_string()},
                          {"closed", c_tensor(red.chart).is_zero()},
                          {"A_JI", a_ji}});
  }
  rep["levels"] = out_levels;
  return rep;
}

json cmd_symplectize(const SystemConfig& cfg, const CommandOptions& opts) {
  Split s = split_for(cfg);
  const SymplectizedSystem sym = symplectize(s.chart, s.F, s.split, cfg.experiments.I0);
  SystemConfig out = cfg;
  out.name = cfg.name + "-symplectized";
  out.chart = sym.chart;
  out.hamiltonian = sym.F;
  out.split_k = s.split.k;
  std::vector<InitialCondition> ics = cfg.experiments.initial_conditions;
  if (s.normalized) ics = transform_ics(ics, s.normalized->transform);
  out.experiments.initial_conditions = transform_ics(ics, sym.transform);
  out.experiments.section.reset();
  const std::string file = out_path(opts, out.name + ".cfg");
  save_config(out, file);

  json G = json::array();
  for (std::size_t m = 0; m < sym.G.size(); ++m)
    G.push_back({{"slot", m + 2}, {"poly", to_json(sym.G[m])}, {"text", sym.G[m].to_string()}});
  json rep;
  rep["command"] = "symplectize";
  rep["system"] = cfg.name;
  rep["I0"] = to_string(sym.I0);
  rep["G"] = G;
  rep["chi"] = "chi_i = psi_i + G_i(I, J), G_i = integral from I0 to I of A_{J_i, I}";
  rep["exact_canonical_identity"] = sym.exact_identity;
  rep["config"] = file;
  return rep;
}

json cmd_integrate(const SystemConfig& cfg, const CommandOptions& opts) {
  const AAVectorField X = hamiltonian_vector_field(cfg.chart, cfg.hamiltonian);
  IntegrateOptions io;
  io.monitors = monitors_for(cfg);
  io.domain = cfg.chart.domain();
  const IntegratorConfig ic = integrator_for(cfg, opts);
  const double T = duration_for(cfg, opts);
  if (cfg.experiments.initial_conditions.empty())
    throw ValidationError("experiments.initial_conditions: nothing to integrate");
  json runs = json::array();
  for (const auto& c : cfg.experiments.initial_conditions) {
    const Trajectory traj = integrate(X, state_of(c), T, ic, io);
    const std::string file = out_path(opts, cfg.name + "-" + c.name + ".csv");
    write_csv(file, traj, opts.wrap);
    json drift = json::object();
    for (std::size_t m = 0; m < traj.monitor_names.size(); ++m)
      drift[traj.monitor_names[m]] = traj.relative_drift(m);
    runs.push_back({{"initial_condition", c.name},
                    {"file", file},
                    {"samples", traj.times.size()},
                    {"final_time", traj.final_time()},
                    {"relative_drift", drift},
                    {"exited_domain", traj.exited_domain},
                    {"warnings", traj.warnings}});
  }
  return {{"command", "integrate"}, {"system", cfg.name}, {"T", T}, {"rtol", ic.rtol}, {"runs", runs}};
}

json cmd_analyze(const SystemConfig& cfg, const CommandOptions& opts) {
  const std::size_t n = cfg.chart.n();
  const AAVectorField X = hamiltonian_vector_field(cfg.chart, cfg.hamiltonian);
  const IntegratorConfig ic = integrator_for(cfg, opts);
  const double T = duration_for(cfg, opts);
  const std::optional<Section> section = opts.poincare ? opts.poincare : cfg.experiments.section;
  if (section && section->angle >= n) throw ValidationError("--poincare: angle index out of range");
  IntegrateOptions io;
  io.domain = cfg.chart.domain();

  json runs = json::array();
  for (const auto& c : cfg.experiments.initial_conditions) {
    const std::vector<double> x0 = state_of(c);
    const Trajectory traj = integrate(X, x0, T, ic, io);
    std::string warning;
    const std::vector<double> rot = rotation_numbers(traj, &warning);
    const LyapunovEstimate mle = lyapunov_mle(X, x0, T, ic);
    const std::string regime = mle.mle <= kMleIntegrableMax ? "regular"
                               : mle.mle > kMleChaoticMin   ? "chaotic"
                                                            : "indeterminate";
    json run = {{"initial_condition", c.name},
                {"rotation_numbers", rot},
                {"rotation_stationarity", rotation_stationarity(traj)},
                {"mle", mle.mle},
                {"mle_separation", mle.separation},
                {"mle_interval", mle.interval},
                {"mle_regime", regime},
                {"exited_domain", traj.exited_domain}};
    json warnings = traj.warnings;
    if (!warning.empty()) warnings.push_back(warning);
    for (const auto& w : mle.warnings) warnings.push_back(w);
    if (section) {
      const SectionPoints pts = poincare_section(X, x0, T, ic, *section);
      const std::string file = out_path(opts, cfg.name + "-" + c.name + "-section.csv");
      write_section_csv(file, pts, n);
      const std::size_t p = section->angle == 0 && n > 1 ? 1 : 0;
      const SectionShape shape = section_shape(pts, n, p, p);
      std::string kind = "indeterminate";
      if (shape.points < kMinSectionPoints)
        warnings.push_back("only " + std::to_string(shape.points) + " section points; shape verdict withheld");
      else if (shape.graph_residual <= kCurveResidualMax)
        kind = "curve";
      else if (shape.occupancy >= kAreaOccupancyMin)
        kind = "area";
      run["section"] = {{"angle", section->angle + 1}, {"value", section->value}, {"shape", kind},
                        {"file", file},                {"points", shape.points},
                        {"plane", "alpha_" + std::to_string(p + 1) + " vs a_" + std::to_string(p + 1)},
                        {"occupancy", shape.occupancy}, {"graph_residual", shape.graph_residual}};
      for (const auto& w : pts.warnings) warnings.push_back(w);
    }
    run["warnings"] = warnings;
    runs.push_back(std::move(run));
  }
  return {{"command", "analyze"},
          {"system", cfg.name},
          {"T", T},
          {"thresholds",
           {{"mle_integrable_max", kMleIntegrableMax},
            {"mle_chaotic_min", kMleChaoticMin},
            {"curve_residual_max", kCurveResidualMax},
            {"area_occupancy_min", kAreaOccupancyMin},
            {"min_section_points", kMinSectionPoints}}},
          {"runs", runs}};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Fully-Hamiltonian systems on almost-symplectic torus fibrations"};
  app.require_subcommand(1);
  std::string config_path, demo_name;
  std::optional<double> T, tol;
  std::optional<std::uint64_t> seed;
  std::string levels, poincare, out_dir = ".";
  bool wrap = false;

  const std::vector<std::pair<std::string, std::string>> names = {
      {"check", "C-tensor, kernel sampling, classification and genericity"},
      {"normalize", "unimodular change putting the spectrum in the first r slots"},
      {"reduce", "reduced systems at the momentum levels"},
      {"symplectize", "angle shift to a canonical system (r = 1)"},
      {"integrate", "trajectories with F and momentum drift"},
      {"analyze", "rotation numbers, Lyapunov exponent, Poincare sections"}};
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "configuration file")->required();
    sub->add_option("--T", T, "integration time");
    sub->add_option("--tol", tol, "integrator tolerance (absolute and relative)");
    sub->add_option("--levels", levels, "momentum levels: c1,c2,...[;c1,c2,...]");
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--poincare", poincare, "section alpha_i=v");
    sub->add_flag("--wrap", wrap, "write angles mod 2 pi");
  }
  CLI::App* demo = app.add_subcommand("demo", "write a demo configuration");
  demo->add_option("name", demo_name, "a4, a5 or symplectic")->required();
  demo->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    if (cmd == "demo") {
      const SystemConfig cfg = demo_by_name(demo_name);
      fs::create_directories(out_dir);
      const std::string file = (fs::path(out_dir) / (cfg.name + ".cfg")).string();
      save_config(cfg, file);
      std::cout << json{{"command", "demo"}, {"config", file}}.dump(2) << "\n";
      return 0;
    }
    CommandOptions opts;
    opts.T = T;
    opts.tol = tol;
    opts.seed = seed;
    opts.out_dir = out_dir;
    opts.wrap = wrap;
    if (!levels.empty()) opts.levels = parse_levels_flag(levels);
    if (!poincare.empty()) opts.poincare = parse_section_flag(poincare);
    const SystemConfig cfg = load_config(config_path);

    json rep;
    if (cmd == "check") rep = cmd_check(cfg, opts);
    if (cmd == "normalize") rep = cmd_normalize(cfg, opts);
    if (cmd == "reduce") rep = cmd_reduce(cfg, opts);
    if (cmd == "symplectize") rep = cmd_symplectize(cfg, opts);
    if (cmd == "integrate") rep = cmd_integrate(cfg, opts);
    if (cmd == "analyze") rep = cmd_analyze(cfg, opts);
    std::ofstream(out_path(opts, cfg.name + "-" + cmd + ".json")) << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    if (cmd == "check" && !rep["fully_hamiltonian"].get<bool>()) {
      std::cerr << "rejected: " << rep["witness"]["description"].get<std::string>() << "\n";
      return 3;
    }
    return 0;
  } catch (const RejectedHamiltonian& e) {
    std::cerr << "classification error: " << e.what() << "\n";
    return 3;
  } catch (const ClassificationError& e) {
    std::cerr << "classification error: " << e.what() << "\n";
    return 3;
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace asympl
