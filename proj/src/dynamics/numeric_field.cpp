#include <algorithm>
#include <cmath>
#include <map>

#include "asympl/dynamics.hpp"
#include "asympl/errors.hpp"

namespace asympl {

NumericField::NumericField(const AAVectorField& X) : n_(X.n) {
  std::map<HarmonicIndex, std::size_t> mode_of;
  auto compile = [&](const FourierFunction& f) {
    std::vector<Term> terms;
    for (const auto& [nu, h] : f.harmonics()) {
      auto [it, fresh] = mode_of.emplace(nu, modes_.size());
      if (fresh) modes_.emplace_back(nu.begin(), nu.end());
      Term t{it->second, NumericPolynomial(h.cos_coeff), NumericPolynomial(h.sin_coeff)};
      max_degree_ = std::max({max_degree_, t.cos_coeff.max_degree(), t.sin_coeff.max_degree()});
      terms.push_back(std::move(t));
    }
    return terms;
  };
  for (const auto& f : X.da) components_.push_back(compile(f));
  for (const auto& f : X.dalpha) components_.push_back(compile(f));
}

void NumericField::operator()(std::span<const double> x, std::span<double> dx) const {
  thread_local std::vector<std::vector<double>> powers;
  thread_local std::vector<double> c, s;
  fill_powers(x.subspan(0, n_), max_degree_, powers);
  c.resize(modes_.size());
  s.resize(modes_.size());
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    double phase = 0;
    for (std::size_t i = 0; i < n_; ++i) phase += modes_[m][i] * x[n_ + i];
    c[m] = std::cos(phase);
    s[m] = std::sin(phase);
  }
  for (std::size_t k = 0; k < 2 * n_; ++k) {
    double v = 0;
    for (const Term& t : components_[k]) {
      if (!t.cos_coeff.is_zero()) v += t.cos_coeff.evaluate(powers) * c[t.mode];
      if (!t.sin_coeff.is_zero()) v += t.sin_coeff.evaluate(powers) * s[t.mode];
    }
    dx[k] = v;
  }
}

OdeRhs NumericField::rhs() const {
  return [field = *this](double, std::span<const double> x, std::span<double> dx) { field(x, dx); };
}

std::vector<double> Trajectory::state_at(double t) const {
  if (dense.empty()) throw RegimeError("trajectory was recorded without dense output");
  auto it = std::lower_bound(dense.begin(), dense.end(), t,
                             [](const DenseStep& s, double x) { return s.t1 < x; });
  if (it == dense.end()) {
    if (t > dense.back().t1 + 1e-12 * std::max(1.0, std::abs(t)))
      throw DomainError("time beyond the recorded trajectory");
    --it;
  }
  return it->evaluate(t);
}

double Trajectory::relative_drift(std::size_t monitor) const {
  if (monitors.empty() || monitor >= monitors.front().size())
    throw DomainError("monitor index out of range");
  const double m0 = monitors.front()[monitor];
  double worst = 0;
  for (const auto& row : monitors) worst = std::max(worst, std::abs(row[monitor] - m0));
  return worst / std::max(std::abs(m0), 1.0);
}

Trajectory integrate(const AAVectorField& X, std::span<const double> x0, double T,
                     const IntegratorConfig& cfg, const IntegrateOptions& opts) {
  const std::size_t n = X.n;
  if (x0.size() != 2 * n) throw DimensionError("initial state must hold n actions and n angles");
  if (opts.domain && !opts.domain->contains(x0.subspan(0, n)))
    throw DomainError("initial actions lie outside the chart domain");
  const NumericField field(X);
  std::vector<NumericFourier> monitors;
  Trajectory traj;
  traj.n = n;
  for (const auto& [name, f] : opts.monitors) {
    if (f.n() != n) throw DimensionError("monitor " + name + " has the wrong dimension");
    traj.monitor_names.push_back(name);
    monitors.emplace_back(f);
  }

  auto record = [&](double t, std::vector<double> x) {
    std::vector<double> m;
    std::span<const double> xs(x);
    for (const auto& f : monitors) m.push_back(f.evaluate(xs.subspan(0, n), xs.subspan(n, n)));
    traj.times.push_back(t);
    traj.states.push_back(std::move(x));
    traj.monitors.push_back(std::move(m));
  };
  record(0.0, std::vector<double>(x0.begin(), x0.end()));

  double next_out = cfg.output_dt;
  auto inside = [&](const std::vector<double>& x) {
    return !opts.domain || opts.domain->contains(std::span<const double>(x).subspan(0, n));
  };
  auto observer = [&](const DenseStep& step) {
    std::vector<double> end = step.end();
    double stop = step.t1;
    bool exited = !inside(end);
    if (exited) {
      double lo = step.t0, hi = step.t1;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(step.evaluate(mid)) ? lo : hi) = mid;
      }
      stop = lo;
    }
    if (opts.keep_dense) traj.dense.push_back(step);
    if (cfg.output_dt > 0) {
      while (next_out <= stop + 1e-12 * std::max(1.0, stop)) {
        record(next_out, step.evaluate(std::min(next_out, step.t1)));
        next_out += cfg.output_dt;
      }
    }
    if (exited) {
      if (traj.times.back() < stop) record(stop, step.evaluate(stop));
      traj.exited_domain = true;
      traj.exit_time = stop;
      traj.warnings.push_back("trajectory left the domain at t = " + std::to_string(stop));
      return false;
    }
    if (cfg.output_dt <= 0) record(step.t1, std::move(end));
    return true;
  };

  std::vector<double> x(x0.begin(), x0.end());
  const double reached = solve_ode(field.rhs(), 0.0, x, T, cfg, observer);
  if (!traj.exited_domain && traj.times.back() < reached - 1e-12 * std::max(1.0, reached))
    record(reached, x);
  return traj;
}

std::vector<double> wrap_angles(std::span<const double> state, std::size_t n) {
  std::vector<double> out(state.begin(), state.end());
  constexpr double two_pi = 2 * M_PI;
  for (std::size_t i = n; i < 2 * n; ++i) {
    out[i] = std::fmod(out[i], two_pi);
    if (out[i] < 0) out[i] += two_pi;
  }
  return out;
}

}  // namespace asympl
