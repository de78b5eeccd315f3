#include <doctest.h>

#include <cmath>

#include "asympl/dynamics.hpp"
#include "asympl/errors.hpp"
#include "oracles.hpp"
#include "systems.hpp"

using namespace asympl;
using namespace oracle;
using fixture::cst;
using fixture::var;

namespace {

std::vector<double> final_state(const AAVectorField& X, std::vector<double> x0, double T, const IntegratorConfig& cfg) {
  NumericField f(X);
  solve_ode(f.rhs(), 0.0, x0, T, cfg);
  return x0;
}

// Harmonic oscillator F = (a^2 + w^2 alpha^2)/2 is not periodic in alpha; use the
// canonical pendulum near its minimum instead: F = a^2/2 - cos alpha.
FourierFunction pendulum1() {
  FourierFunction F = FourierFunction::basic(var(1, 1) * var(1, 1) * q(1, 2));
  F.add_harmonic({1}, cst(1, q(-1)), Polynomial(1));
  return F;
}

}  // namespace

TEST_CASE("dop853 on exponential growth") {
  const OdeRhs f = [](double, std::span<const double> x, std::span<double> dx) { dx[0] = x[0]; };
  double prev = 1.0;
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    IntegratorConfig cfg;
    cfg.rtol = cfg.atol = tol;
    std::vector<double> x = {1.0};
    solve_ode(f, 0.0, x, 1.0, cfg);
    const double err = std::abs(x[0] - std::exp(1.0));
    CHECK(err < 100 * tol);
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("rk4 is fourth order") {
  const OdeRhs f = [](double t, std::span<const double> x, std::span<double> dx) { dx[0] = -x[0] * t; };
  auto run = [&](double h) {
    IntegratorConfig cfg;
    cfg.method = IntegratorConfig::Method::rk4;
    cfg.step = h;
    std::vector<double> x = {1.0};
    solve_ode(f, 0.0, x, 2.0, cfg);
    return std::abs(x[0] - std::exp(-2.0));
  };
  const double ratio = run(0.1) / run(0.05);
  CHECK(ratio > 12);
  CHECK(ratio < 20);
}

TEST_CASE("dense output between steps") {
  const OdeRhs f = [](double, std::span<const double> x, std::span<double> dx) {
    dx[0] = x[1];
    dx[1] = -x[0];
  };
  for (auto method : {IntegratorConfig::Method::dop853, IntegratorConfig::Method::rk4}) {
    IntegratorConfig cfg;
    cfg.method = method;
    cfg.step = 0.01;
    std::vector<double> x = {0.0, 1.0};
    double worst = 0;
    solve_ode(f, 0.0, x, 5.0, cfg, [&](const DenseStep& s) {
      for (double u : {0.25, 0.5, 0.75}) {
        const double t = s.t0 + u * (s.t1 - s.t0);
        const auto y = s.evaluate(t);
        worst = std::max(worst, std::abs(y[0] - std::sin(t)));
      }
      return true;
    });
    CHECK(worst < (method == IntegratorConfig::Method::rk4 ? 1e-7 : 1e-9));
  }
}

TEST_CASE("step budget and underflow") {
  const OdeRhs f = [](double, std::span<const double> x, std::span<double> dx) { dx[0] = x[0] * x[0]; };
  IntegratorConfig cfg;
  std::vector<double> x = {1.0};
  CHECK_THROWS_AS(solve_ode(f, 0.0, x, 2.0, cfg), NumericalError);  // blow-up at t = 1
  cfg.max_steps = 3;
  x = {1.0};
  const OdeRhs g = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = std::cos(50 * y[0]); };
  CHECK_THROWS_AS(solve_ode(g, 0.0, x, 100.0, cfg), NumericalError);
}

TEST_CASE("vertical fields flow linearly") {
  const auto chart = fixture::a4_demo_chart();
  const auto F = FourierFunction::basic(var(4, 1) * q(2) - var(4, 2) + var(4, 3) * q(1, 3) + var(4, 4) * q(5));
  const AAVectorField X = hamiltonian_vector_field(chart, F);
  IntegratorConfig cfg;
  cfg.output_dt = 1.0;
  const std::vector<double> x0 = {0.3, -0.1, 2.0, 1.0, 0.0, 1.0, 2.0, 3.0};
  const Trajectory tr = integrate(X, x0, 200, cfg);
  const std::vector<double> w = {2, -1, 1.0 / 3, 5};
  for (std::size_t s = 0; s < tr.times.size(); ++s)
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(tr.states[s][i] == x0[i]);
      CHECK(tr.states[s][4 + i] == doctest::Approx(x0[4 + i] + w[i] * tr.times[s]).epsilon(1e-12));
    }
  const auto rot = rotation_numbers(tr);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(rot[i] - w[i]) < 1e-9);
  CHECK(rotation_stationarity(tr) < 1e-9);

  std::string warning;
  (void)rotation_numbers(integrate(X, x0, 10, cfg), &warning);
  CHECK_FALSE(warning.empty());

  const LyapunovEstimate mle = lyapunov_mle(X, x0, 200, cfg);
  CHECK(mle.mle <= 0.005);
  CHECK(mle.trace.size() == 200);
}

TEST_CASE("fixed point has zero rotation") {
  const AAVectorField X = hamiltonian_vector_field(AlmostSymplecticChart::canonical(1, Box::unbounded(1)), pendulum1());
  IntegratorConfig cfg;
  cfg.output_dt = 1.0;
  const Trajectory tr = integrate(X, std::vector<double>{0.0, 0.0}, 100, cfg);
  CHECK(rotation_numbers(tr)[0] == 0.0);
}

TEST_CASE("small pendulum oscillation has period 2 pi") {
  const AAVectorField X = hamiltonian_vector_field(AlmostSymplecticChart::canonical(1, Box::unbounded(1)), pendulum1());
  IntegratorConfig cfg;
  IntegrateOptions opts;
  opts.keep_dense = true;
  const Trajectory tr = integrate(X, std::vector<double>{1e-3, 0.0}, 40, cfg, opts);
  // Upward zero crossings of alpha by bisection on the dense output.
  std::vector<double> crossings;
  for (const auto& s : tr.dense) {
    double lo = s.t0, hi = s.t1;
    if (!(s.evaluate(lo)[1] < 0 && s.evaluate(hi)[1] >= 0)) continue;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (s.evaluate(mid)[1] < 0 ? lo : hi) = mid;
    }
    crossings.push_back(lo);
  }
  REQUIRE(crossings.size() >= 5);
  for (std::size_t i = 1; i < crossings.size(); ++i)
    CHECK(std::abs(crossings[i] - crossings[i - 1] - 2 * M_PI) < 0.01 * 2 * M_PI);

  const LyapunovEstimate mle = lyapunov_mle(X, std::vector<double>{0.3, 0.0}, 1000, cfg);
  CHECK(mle.mle <= 0.005);
}

TEST_CASE("conservation on the A5 pendulum") {
  const auto chart = fixture::a5_chart();
  const auto F = fixture::a5_pendulum();
  const AAVectorField X = hamiltonian_vector_field(chart, F);
  IntegrateOptions opts;
  opts.monitors = {{"F", F}, {"a3", FourierFunction::action(5, 2)}, {"a4", FourierFunction::action(5, 3)},
                   {"a5", FourierFunction::action(5, 4)}};
  const std::vector<double> x0 = {0.1, 0.0, 0.3, -0.2, 0.5, 3.0, 0.0, 0.0, 0.0, 0.0};
  IntegratorConfig cfg;
  cfg.output_dt = 0.5;
  const Trajectory tr = integrate(X, x0, 200, cfg, opts);
  for (std::size_t m = 0; m < 4; ++m) CHECK(tr.relative_drift(m) <= 1e-8);
  for (std::size_t m = 1; m < 4; ++m) CHECK(tr.relative_drift(m) == 0.0);

  // Tighter tolerance, smaller drift. Sampled per decade: the max-over-time drift is
  // too noisy for a pointwise check at finer tolerance ratios.
  double prev = 0;
  for (double tol : {1e-8, 1e-9, 1e-10, 1e-11}) {
    IntegratorConfig c;
    c.rtol = c.atol = tol;
    c.output_dt = 0.5;
    const double d = integrate(X, x0, 200, c, opts).relative_drift(0);
    if (prev > 0) CHECK(d <= 0.5 * prev);
    prev = d;
  }
}

TEST_CASE("time reversal and volume preservation") {
  const auto chart = fixture::a5_chart();
  const AAVectorField X = hamiltonian_vector_field(chart, fixture::a5_pendulum());
  IntegratorConfig cfg;
  const std::vector<double> x0 = {0.5, 0.2, 0.1, -0.3, 0.2, 1.0, 0.5, 0.0, 0.0, 0.0};
  const auto fwd = final_state(X, x0, 10, cfg);
  const auto back = final_state(-X, fwd, 10, cfg);
  for (std::size_t i = 0; i < x0.size(); ++i) CHECK(std::abs(back[i] - x0[i]) < 1e-6);

  // det of the flow-map Jacobian by central differences.
  const std::size_t d = x0.size();
  std::vector<std::vector<double>> J(d, std::vector<double>(d));
  const double h = 1e-6;
  for (std::size_t j = 0; j < d; ++j) {
    auto up = x0, dn = x0;
    up[j] += h;
    dn[j] -= h;
    const auto fu = final_state(X, up, 10, cfg), fd = final_state(X, dn, 10, cfg);
    for (std::size_t i = 0; i < d; ++i) J[i][j] = (fu[i] - fd[i]) / (2 * h);
  }
  // Gaussian elimination determinant.
  double det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < d; ++i)
      if (std::abs(J[i][c]) > std::abs(J[p][c])) p = i;
    if (p != c) {
      std::swap(J[p], J[c]);
      det = -det;
    }
    det *= J[c][c];
    for (std::size_t i = c + 1; i < d; ++i) {
      const double f = J[i][c] / J[c][c];
      for (std::size_t k = c; k < d; ++k) J[i][k] -= f * J[c][k];
    }
  }
  CHECK(std::abs(det - 1) < 1e-4);
}

TEST_CASE("poincare sections") {
  const auto F = FourierFunction::basic(var(2, 1) * q(3) + var(2, 2) * q(1, 2));
  const AAVectorField X = hamiltonian_vector_field(AlmostSymplecticChart::canonical(2, Box::unbounded(2)), F);
  IntegratorConfig cfg;
  const SectionPoints pts = poincare_section(X, std::vector<double>{0, 0, 0.1, 0.2}, 100, cfg, Section{0, 1.0});
  REQUIRE(pts.times.size() >= 40);
  CHECK(pts.times[0] == doctest::Approx((1.0 - 0.1) / 3).epsilon(1e-10));
  for (std::size_t i = 1; i < pts.times.size(); ++i)
    CHECK(std::abs(pts.times[i] - pts.times[i - 1] - 2 * M_PI / 3) < 1e-8);
  for (const auto& s : pts.states) CHECK(std::fmod(s[2], 2 * M_PI) == doctest::Approx(1.0).epsilon(1e-9));

  const auto still = FourierFunction::basic(var(2, 2));
  const AAVectorField Y = hamiltonian_vector_field(AlmostSymplecticChart::canonical(2, Box::unbounded(2)), still);
  const SectionPoints none = poincare_section(Y, std::vector<double>{0, 0, 0.1, 0.2}, 50, cfg, Section{0, 1.0});
  CHECK(none.times.empty());
  CHECK_FALSE(none.warnings.empty());
}

TEST_CASE("section shape separates curves from clouds") {
  SectionPoints curve, cloud;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double t = 2 * M_PI * u(rng);
    curve.states.push_back({1 + 0.3 * std::sin(t), 0, t, 0});
    cloud.states.push_back({u(rng), 0, t, 0});
    curve.times.push_back(i);
    cloud.times.push_back(i);
  }
  const auto c = section_shape(curve, 2, 0, 0), d = section_shape(cloud, 2, 0, 0);
  CHECK(c.points == 1000);
  CHECK(c.graph_residual < 0.01);
  CHECK(c.occupancy < 0.4);
  CHECK(d.graph_residual > 0.1);
  CHECK(d.occupancy > 0.8);
}

TEST_CASE("domain exit is reported") {
  const Box box({{q(-1), q(1)}});
  const auto F = FourierFunction::sine({1}, cst(1, q(-1)));  // a' = cos(alpha) -> leaves the box
  const AAVectorField X = hamiltonian_vector_field(AlmostSymplecticChart::canonical(1, box), F);
  IntegrateOptions opts;
  opts.domain = box;
  IntegratorConfig cfg;
  const Trajectory tr = integrate(X, std::vector<double>{0.0, 0.0}, 10, cfg, opts);
  CHECK(tr.exited_domain);
  CHECK(tr.exit_time == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tr.final_time() == doctest::Approx(1.0).epsilon(1e-9));
}
