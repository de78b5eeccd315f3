#include <cmath>

#include "asympl/cli.hpp"
#include "asympl/errors.hpp"

namespace asympl {

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

Interval between(long lo, long hi) { return Interval{q(lo), q(hi)}; }

}  // namespace

// A4 with g2 = a1 a2, g3 = a3, g4 = 1 and a pendulum in (a1, alpha1).
SystemConfig demo_a4() {
  const std::size_t n = 4;
  auto a = [&](std::size_t i) { return Polynomial::variable(n, i - 1); };
  auto one = Polynomial::constant(n, q(1));
  SystemConfig cfg;
  cfg.name = "demo-a4";
  cfg.chart = AlmostSymplecticChart::from_upper(
      n,
      {{{0, 1}, -(a(1) * a(2))}, {{0, 2}, -a(3)}, {{0, 3}, -one}, {{1, 2}, a(4)}},
      Box({between(-4, 4), between(-10, 10), between(-10, 10), between(-10, 10)}));
  FourierFunction F = FourierFunction::basic(a(1) * a(1) * q(1, 2) + a(2) + a(3) + a(4) * q(1, 2));
  F.add_harmonic({1, 0, 0, 0}, -one, Polynomial(n));
  cfg.hamiltonian = F;
  cfg.integrator.output_dt = 0.1;
  cfg.experiments.T = 100;
  cfg.experiments.levels = {{q(1, 2), q(1), q(1)}};
  cfg.experiments.section = Section{0, 0.0};
  cfg.experiments.initial_conditions = {
      {"libration", {1.0, 0.5, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0}},
      {"rotation", {2.5, -1.0, 2.0, 0.5}, {0.0, 1.0, 2.0, 3.0}},
  };
  return cfg;
}

// Antisymmetric A5 (entry (3,2) = -g23) with the periodically perturbed pendulum.
SystemConfig demo_a5() {
  const std::size_t n = 5;
  auto a = [&](std::size_t i) { return Polynomial::variable(n, i - 1); };
  auto c = [&](long p, long d = 1) { return Polynomial::constant(n, q(p, d)); };
  SystemConfig cfg;
  cfg.name = "demo-a5";
  cfg.chart = AlmostSymplecticChart::from_upper(n,
                                                {
                                                    {{0, 1}, a(1) * q(1, 20)},          // g12
                                                    {{0, 2}, a(1) * a(3) * q(1, 10)},   // g13
                                                    {{0, 3}, a(4) * q(1, 5)},           // g14
                                                    {{0, 4}, c(1, 4)},                  // g15
                                                    {{1, 2}, a(2) * q(1, 10)},          // g23
                                                    {{1, 3}, a(2) * a(4) * q(1, 10)},   // g24
                                                    {{1, 4}, a(5) * q(1, 5)},           // g25
                                                    {{2, 3}, a(5)},
                                                },
                                                Box::unbounded(n));
  FourierFunction F = FourierFunction::basic(a(1) * a(1) * q(1, 2) + a(2) + a(3) + a(4) + a(5));
  // -(1 + cos alpha2) cos alpha1
  FourierFunction pend = FourierFunction::constant(n, q(1)) + FourierFunction::cosine({0, 1, 0, 0, 0}, c(1));
  F -= pend * FourierFunction::cosine({1, 0, 0, 0, 0}, c(1));
  cfg.hamiltonian = F;
  cfg.integrator.output_dt = 0.1;
  cfg.experiments.T = 1000;
  cfg.experiments.levels = {{q(0), q(0), q(0)}};
  cfg.experiments.section = Section{1, 0.0};
  cfg.experiments.initial_conditions = {
      {"regular", {5.0, 0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0, 0.0}},
      {"chaotic", {0.1, 0.0, 0.0, 0.0, 0.0}, {3.0, 0.0, 0.0, 0.0, 0.0}},
  };
  return cfg;
}

// A = 0 control: two coupled pendula.
SystemConfig demo_symplectic() {
  const std::size_t n = 2;
  auto a = [&](std::size_t i) { return Polynomial::variable(n, i - 1); };
  SystemConfig cfg;
  cfg.name = "demo-symplectic";
  cfg.chart = AlmostSymplecticChart::canonical(n, Box::unbounded(n));
  FourierFunction F = FourierFunction::basic((a(1) * a(1) + a(2) * a(2)) * q(1, 2));
  F.add_harmonic({1, 0}, Polynomial::constant(n, q(-1)), Polynomial(n));
  F.add_harmonic({1, -1}, Polynomial::constant(n, q(-1, 2)), Polynomial(n));
  cfg.hamiltonian = F;
  cfg.integrator.output_dt = 0.1;
  cfg.experiments.T = 100;
  cfg.experiments.levels = {{}};
  cfg.experiments.section = Section{1, 0.0};
  cfg.experiments.initial_conditions = {{"start", {0.5, 1.0}, {0.0, 0.0}}};
  return cfg;
}

SystemConfig demo_by_name(const std::string& name) {
  if (name == "a4" || name == "demo-a4") return demo_a4();
  if (name == "a5" || name == "demo-a5") return demo_a5();
  if (name == "symplectic" || name == "demo-symplectic") return demo_symplectic();
  throw ValidationError("unknown demo '" + name + "' (expected a4, a5 or symplectic)");
}

}  // namespace asympl
