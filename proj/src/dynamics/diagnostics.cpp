#include <algorithm>
#include <cmath>
#include <set>

#include "asympl/dynamics.hpp"
#include "asympl/errors.hpp"

namespace asympl {

namespace {
constexpr double kTwoPi = 2 * M_PI;
}

std::vector<double> rotation_numbers(const Trajectory& traj, std::string* warning) {
  const std::size_t n = traj.n;
  if (traj.times.size() < 2) throw DomainError("rotation numbers need at least two samples");
  const double T = traj.times.back() - traj.times.front();
  if (warning) *warning = T < 100 * (1 - 1e-9) ? "trajectory shorter than T = 100; rotation numbers unreliable" : "";
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = (traj.states.back()[n + i] - traj.states.front()[n + i]) / T;
  return w;
}

double rotation_stationarity(const Trajectory& traj) {
  const std::size_t n = traj.n;
  if (traj.times.size() < 3) throw DomainError("stationarity needs at least three samples");
  const double t0 = traj.times.front(), t1 = traj.times.back();
  auto it = std::lower_bound(traj.times.begin() + 1, traj.times.end() - 1, 0.5 * (t0 + t1));
  const auto m = static_cast<std::size_t>(it - traj.times.begin());
  const double tm = traj.times[m];
  const std::vector<double>& mid = traj.states[m];
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double first = (mid[n + i] - traj.states.front()[n + i]) / (tm - t0);
    const double second = (traj.states.back()[n + i] - mid[n + i]) / (t1 - tm);
    worst = std::max(worst, std::abs(first - second));
  }
  return worst;
}

LyapunovEstimate lyapunov_mle(const AAVectorField& X, std::span<const double> x0, double T,
                              const IntegratorConfig& cfg, double separation, double interval) {
  const std::size_t d = 2 * X.n;
  if (x0.size() != d) throw DimensionError("initial state must hold n actions and n angles");
  if (!(interval > 0) || !(separation > 0))
    throw ValidationError("renormalization interval and separation must be positive");
  const NumericField field(X);
  const OdeRhs pair = [&field, d](double, std::span<const double> z, std::span<double> dz) {
    field(z.subspan(0, d), dz.subspan(0, d));
    field(z.subspan(d, d), dz.subspan(d, d));
  };
  const auto segments = static_cast<std::size_t>(std::floor(T / interval + 1e-9));

  LyapunovEstimate est;
  est.interval = interval;
  for (int attempt = 0; attempt < 4; ++attempt, separation *= 0.1) {
    est.separation = separation;
    est.trace.clear();
    std::vector<double> z(2 * d);
    const double per = separation / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
      z[i] = x0[i];
      z[d + i] = x0[i] + per;
    }
    double sum = 0, t = 0;
    bool diverged = false;
    for (std::size_t s = 0; s < segments; ++s) {
      solve_ode(pair, t, z, interval, cfg);
      t += interval;
      double dist = 0;
      for (std::size_t i = 0; i < d; ++i) dist += (z[d + i] - z[i]) * (z[d + i] - z[i]);
      dist = std::sqrt(dist);
      if (!std::isfinite(dist) || dist == 0 || (s == 0 && dist > 1e3 * separation)) {
        diverged = true;
        break;
      }
      sum += std::log(dist / separation);
      for (std::size_t i = 0; i < d; ++i) z[d + i] = z[i] + (z[d + i] - z[i]) * (separation / dist);
      est.trace.emplace_back(t, sum / t);
    }
    if (!diverged) {
      est.mle = segments ? sum / (static_cast<double>(segments) * interval) : 0.0;
      return est;
    }
    est.warnings.push_back("separation " + std::to_string(separation) +
                           " diverged before the first renormalization; retrying smaller");
  }
  throw NumericalError("Lyapunov estimate diverged at every trial separation");
}

SectionPoints poincare_section(const AAVectorField& X, std::span<const double> x0, double T,
                               const IntegratorConfig& cfg, const Section& section) {
  const std::size_t n = X.n;
  if (section.angle >= n) throw DomainError("section angle index out of range");
  if (x0.size() != 2 * n) throw DimensionError("initial state must hold n actions and n angles");
  const std::size_t k = n + section.angle;
  SectionPoints out;
  auto observer = [&](const DenseStep& step) {
    const double before = step.start()[k];
    const double after = step.end()[k];
    if (!(after > before)) return true;
    const double m_lo = std::floor((before - section.value) / kTwoPi) + 1;
    const double m_hi = std::floor((after - section.value) / kTwoPi);
    for (double m = m_lo; m <= m_hi; ++m) {
      const double level = section.value + kTwoPi * m;
      // Illinois false position on alpha(t) - level, bracketed by the step.
      double ta = step.t0, tb = step.t1;
      double ga = before - level, gb = after - level;
      int side = 0;
      double tc = tb;
      for (int it = 0; it < 200 && tb - ta > 1e-12; ++it) {
        tc = (ta * gb - tb * ga) / (gb - ga);
        if (!(tc > ta && tc < tb)) tc = 0.5 * (ta + tb);
        const double gc = step.evaluate(tc)[k] - level;
        if (gc == 0) {
          ta = tb = tc;
          break;
        }
        if ((gc < 0) == (ga < 0)) {
          ta = tc;
          ga = gc;
          if (side == -1) gb *= 0.5;
          side = -1;
        } else {
          tb = tc;
          gb = gc;
          if (side == 1) ga *= 0.5;
          side = 1;
        }
      }
      const double root = 0.5 * (ta + tb);
      out.times.push_back(root);
      out.states.push_back(step.evaluate(root));
    }
    return true;
  };
  std::vector<double> x(x0.begin(), x0.end());
  solve_ode(NumericField(X).rhs(), 0.0, x, T, cfg, observer);
  if (out.times.empty()) out.warnings.push_back("no section crossings within T");
  return out;
}

SectionShape section_shape(const SectionPoints& pts, std::size_t n, std::size_t angle_p,
                           std::size_t action_q, std::size_t bins) {
  SectionShape shape;
  shape.points = pts.states.size();
  if (shape.points < 3 || bins == 0) return shape;
  std::vector<double> xs, ys;
  for (const auto& s : pts.states) {
    double x = std::fmod(s[n + angle_p], kTwoPi);
    if (x < 0) x += kTwoPi;
    xs.push_back(x);
    ys.push_back(s[action_q]);
  }
  const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
  const double ymin = *ymin_it, range = std::max(*ymax_it - ymin, 1e-300);

  std::set<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto cx = std::min(bins - 1, static_cast<std::size_t>(xs[i] / kTwoPi * bins));
    const auto cy = std::min(bins - 1, static_cast<std::size_t>((ys[i] - ymin) / range * bins));
    cells.emplace(cx, cy);
  }
  shape.occupancy = static_cast<double>(cells.size()) / static_cast<double>(bins * bins);

  // Residual of a per-column straight-line fit, so the slope of a smooth graph does not count.
  const std::size_t columns = 4 * bins;
  std::vector<std::vector<std::size_t>> col(columns);
  for (std::size_t i = 0; i < xs.size(); ++i)
    col[std::min(columns - 1, static_cast<std::size_t>(xs[i] / kTwoPi * columns))].push_back(i);
  double total = 0;
  std::size_t used = 0;
  for (const auto& c : col) {
    if (c.size() < 3) continue;
    double mx = 0, my = 0;
    for (auto i : c) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= c.size();
    my /= c.size();
    double sxx = 0, sxy = 0;
    for (auto i : c) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    double ss = 0;
    for (auto i : c) {
      const double r = ys[i] - my - slope * (xs[i] - mx);
      ss += r * r;
    }
    total += std::sqrt(ss / c.size());
    ++used;
  }
  shape.graph_residual = used ? total / used / range : 0.0;
  return shape;
}

}  // namespace asympl
