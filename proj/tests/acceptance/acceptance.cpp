// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.
// Tolerances and sample counts are fixed here on purpose; do not tune them per run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "asympl/chart.hpp"
#include "asympl/dynamics.hpp"
#include "asympl/lattice.hpp"
#include "asympl/normalize.hpp"
#include "asympl/rational_linalg.hpp"
#include "asympl/reduction.hpp"
#include "asympl/spectra.hpp"
#include "oracles.hpp"
#include "systems.hpp"

using namespace asympl;
using namespace oracle;
using fixture::cst;
using fixture::var;

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

std::vector<double> reals(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<double> eval_field(const AAVectorField& X, std::span<const double> a, std::span<const double> al) {
  std::vector<double> out;
  for (const auto& f : X.da) out.push_back(f.evaluate(a, al));
  for (const auto& f : X.dalpha) out.push_back(f.evaluate(a, al));
  return out;
}

// Random polynomial that is guaranteed nonzero.
Polynomial nonzero_poly(std::mt19937_64& rng, std::size_t n, unsigned deg, int terms) {
  Polynomial p = random_poly(rng, n, deg, terms);
  std::uniform_int_distribution<int> c(1, 3);
  if (p.is_zero()) p = cst(n, q(c(rng)));
  return p;
}

// Harmonic index with entries in {-1, 0, 1} on the allowed slots only, nonzero.
HarmonicIndex random_nu(std::mt19937_64& rng, std::size_t n, const std::vector<std::size_t>& slots) {
  std::uniform_int_distribution<int> u(-1, 1);
  HarmonicIndex nu(n, 0);
  while (true) {
    bool nz = false;
    for (auto s : slots) nz |= (nu[s] = u(rng)) != 0;
    if (nz) return nu;
  }
}

FourierFunction fourier_on(std::mt19937_64& rng, std::size_t n, const std::vector<std::size_t>& slots,
                           int harmonics, unsigned deg = 2) {
  FourierFunction f = FourierFunction::basic(random_poly(rng, n, deg, 3));
  for (int h = 0; h < harmonics; ++h)
    f.add_harmonic(random_nu(rng, n, slots), nonzero_poly(rng, n, deg > 0 ? deg - 1 : 0, 2),
                   random_poly(rng, n, deg > 0 ? deg - 1 : 0, 2));
  return f;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

// Random unimodular matrix: a permutation followed by elementary row additions.
IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops) {
  IntegerMatrix Z = IntegerMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> mult(-1, 1);
  for (std::size_t i = n; i > 1; --i) Z.swap_rows(i - 1, std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
  for (int k = 0; k < ops; ++k) {
    const std::size_t i = idx(rng), j = idx(rng);
    const int m = mult(rng);
    if (i != j && m != 0) Z.add_row_multiple(i, j, Integer(m));
  }
  return Z;
}

int parity(const std::vector<std::size_t>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 == 0 ? 1 : -1;
}

// C_ijk(a) straight from the definition, with exact derivatives at a rational point.
Rational c_exact(const AlmostSymplecticChart& chart, std::size_t i, std::size_t j, std::size_t k,
                 std::span<const Rational> a) {
  return chart.A(i, j).derivative(k).evaluate(a) + chart.A(k, i).derivative(j).evaluate(a) +
         chart.A(j, k).derivative(i).evaluate(a);
}

RationalVector random_rational_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-40, 40);
  RationalVector p(n);
  for (auto& x : p) x = q(num(rng), 16);
  return p;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& out) {
  std::mt19937_64 rng(101);
  const std::size_t n = 4;
  std::vector<AlmostSymplecticChart> charts = {fixture::a4_demo_chart()};
  // g_i arbitrary polynomials in (a1, a_i).
  for (int t = 0; t < 5; ++t) {
    auto g = [&](std::size_t i) {
      Polynomial p(n);
      std::uniform_int_distribution<int> e(0, 3), c(-5, 5);
      for (int term = 0; term < 4; ++term) {
        Polynomial::Exponents ex(n, 0);
        ex[0] = static_cast<unsigned>(e(rng));
        ex[i - 1] = static_cast<unsigned>(e(rng));
        p.add_term(ex, q(c(rng), 2));
      }
      return p;
    };
    charts.push_back(fixture::a4_chart(g(2), g(3), g(4)));
  }
  std::size_t checked = 0;
  for (const auto& chart : charts) {
    const CTensor C = c_tensor(chart);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const bool distinct = i != j && j != k && i != k;
          Polynomial expect(n);
          if (distinct && i != 0 && j != 0 && k != 0) expect = cst(n, q(parity({i, j, k})));
          out.require(C(i, j, k) == expect, "C(" + std::to_string(i + 1) + std::to_string(j + 1) +
                                                std::to_string(k + 1) + ") = " + C(i, j, k).to_string());
          ++checked;
        }
  }
  out.detail << checked << " entries on " << charts.size() << " A4 charts";
}

void criterion2(Outcome& out) {
  std::mt19937_64 rng(202);
  const auto chart = fixture::a5_chart();
  const CTensor C = c_tensor(chart);
  const std::size_t n = 5;
  int accepted = 0, rejected = 0;
  for (int t = 0; t < 50; ++t) {
    // Even trials stay on alpha1, alpha2; odd trials add one harmonic touching 3-5.
    FourierFunction F = fourier_on(rng, n, {0, 1}, 1 + t % 3);
    if (t % 2 == 1) {
      std::vector<std::size_t> slots = range(0, n);
      HarmonicIndex nu = random_nu(rng, n, slots);
      if (nu[2] == 0 && nu[3] == 0 && nu[4] == 0) nu[2 + static_cast<std::size_t>(t % 3)] = 1;
      F.add_harmonic(nu, nonzero_poly(rng, n, 1, 2), Polynomial(n));
    }
    bool touches = false;
    for (const auto& nu : spectrum(F).support) touches |= nu[2] != 0 || nu[3] != 0 || nu[4] != 0;
    const auto v = is_fully_hamiltonian(chart, C, F);
    out.require(v.accepted == !touches, "trial " + std::to_string(t));
    if (!v.accepted) {
      out.require(v.witness.has_value(), "missing witness");
      if (v.witness) {
        const auto& w = *v.witness;
        Rational contraction = 0;
        for (std::size_t k = 0; k < n; ++k) contraction += C(w.i, w.j, k).evaluate(w.point) * static_cast<long>(w.nu[k]);
        const auto& h = F.harmonics().at(w.nu);
        const Rational coeff = (w.sine_part ? h.sin_coeff : h.cos_coeff).evaluate(w.point);
        out.require(contraction * coeff == w.value && w.value != 0, "witness does not check");
      }
    }
    (v.accepted ? accepted : rejected)++;
  }
  out.detail << accepted << " accepted, " << rejected << " rejected of 50";
}

void criterion3(Outcome& out) {
  std::mt19937_64 rng(303);
  std::size_t violations = 0, nonzero = 0, disagree = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t % 4);
    const auto chart = random_chart(rng, n, 2, 3);
    const CTensor C = c_tensor(chart);
    for (int s = 0; s < 20; ++s) {
      const RationalVector a = random_rational_point(rng, n);
      // Rows indexed by the contracted slot: u -> C(a)(u, ., .).
      std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n * n));
      bool any = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            M[i][j * n + k] = c_exact(chart, i, j, k, a);
            any |= M[i][j * n + k] != 0;
          }
      if (!any) continue;
      ++nonzero;
      const std::size_t dim = n - rank_of(M);
      if (dim > n - 3) ++violations;
      if (kernel_at(C, chart.domain(), a).size() != dim) ++disagree;
    }
  }
  out.require(violations == 0, std::to_string(violations) + " violations");
  out.require(disagree == 0, std::to_string(disagree) + " kernel_at disagreements");
  out.detail << nonzero << " nonzero samples, " << violations << " violations";
}

struct Pair {
  AlmostSymplecticChart chart;
  FourierFunction F;
  std::string family;
};

std::vector<Pair> pair_family() {
  std::mt19937_64 rng(404);
  std::vector<Pair> pairs;
  for (int t = 0; t < 25; ++t) {
    // A5 pushed through a random unimodular change of actions.
    const std::size_t n = 5;
    FourierFunction F = fourier_on(rng, n, {0, 1}, 1 + t % 2);
    if (t % 2 == 1) F.add_harmonic(random_nu(rng, n, {2, 3, 4}), nonzero_poly(rng, n, 1, 2), Polynomial(n));
    AATransform T = AATransform::linear(random_unimodular(rng, n, 4));
    T.z = {q(t % 3), q(0), q(-1, 2), q(0), q(1)};
    auto tr = apply_transform(fixture::a5_chart(), F, T);
    pairs.push_back({tr.chart, tr.F, "A5'"});
  }
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t % 3);
    auto chart = random_chart(rng, n, 2, 2);
    FourierFunction F = t % 2 == 0 ? FourierFunction::basic(random_poly(rng, n, 3, 4)) : fourier_on(rng, n, range(0, n), 1);
    pairs.push_back({chart, F, "random"});
  }
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    pairs.push_back({AlmostSymplecticChart::canonical(n, Box::unbounded(n)), fourier_on(rng, n, range(0, n), 2), "flat"});
  }
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 4;
    auto g = [&](std::size_t i) {
      Polynomial p = random_poly(rng, n, 2, 3);
      // Keep only terms in (a1, a_i).
      Polynomial kept(n);
      for (const auto& [e, c] : p.terms()) {
        bool ok = true;
        for (std::size_t v = 1; v < n; ++v) ok &= v == i - 1 || e[v] == 0;
        if (ok) kept.add_term(e, c);
      }
      return kept;
    };
    FourierFunction F = fourier_on(rng, n, {0}, 2);
    if (t % 2 == 1) F.add_harmonic(random_nu(rng, n, {1, 2, 3}), nonzero_poly(rng, n, 1, 2), Polynomial(n));
    pairs.push_back({fixture::a4_chart(g(2), g(3), g(4)), F, "A4"});
  }
  return pairs;
}

void criterion4(Outcome& out, const std::vector<Pair>& pairs) {
  std::mt19937_64 rng(405);
  int disagreements = 0, accepted = 0;
  double worst_accepted = 0;
  std::map<std::string, int> per_family;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [chart, F, family] = pairs[p];
    const std::size_t n = chart.n();
    const CTensor C = c_tensor(chart);
    const bool symbolic = is_fully_hamiltonian(chart, C, F).accepted;
    double worst = 0;
    for (int s = 0; s < 200; ++s) {
      const auto a = reals(rng, n, -1.5, 1.5), al = reals(rng, n, 0, kTwoPi);
      worst = std::max(worst, full_hamiltonian_residual(C, F, a, al));
    }
    const bool pointwise = worst <= 1e-10;
    if (pointwise != symbolic) {
      ++disagreements;
      out.require(false, family + " pair " + std::to_string(p));
    }
    if (symbolic) {
      ++accepted;
      ++per_family[family];
      worst_accepted = std::max(worst_accepted, worst);
    }
  }
  out.detail << pairs.size() << " pairs (" << accepted << " accepted), " << disagreements
             << " disagreements, max accepted residual " << worst_accepted << "; accepted by family:";
  for (const auto& [f, c] : per_family) out.detail << " " << f << "=" << c;
}

void criterion5(Outcome& out, const std::vector<Pair>& pairs) {
  std::mt19937_64 rng(505);
  int normalized = 0;
  double worst = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [chart, F, family] = pairs[p];
    if (!is_fully_hamiltonian(chart, F).accepted) continue;
    const std::string tag = family + " pair " + std::to_string(p);
    const std::size_t n = chart.n();
    const NormalizedSystem ns = normalize_hamiltonian(chart, F);
    ++normalized;
    for (const auto& nu : spectrum(ns.F).support)
      for (std::size_t j = ns.r; j < n; ++j) out.require(nu[j] == 0, tag + ": harmonic outside the first r slots");
    out.require(abs(cofactor_determinant(ns.lattice.M)) == 1, tag + ": |det M| != 1");
    out.require(ns.r + ns.k == n, tag + ": r + k != n");
    if (!c_tensor(chart).is_zero()) out.require(ns.k >= 3, tag + ": k < 3");
    for (int s = 0; s < 100; ++s) {
      const auto a = reals(rng, n, -1.5, 1.5), al = reals(rng, n, 0, kTwoPi);
      const double want = F.evaluate(a, al);
      const double got = ns.F.evaluate(transform_actions(ns.transform, a), transform_angles(ns.transform, a, al));
      const double err = std::abs(got - want) / std::max(1.0, std::abs(want));
      worst = std::max(worst, err);
    }
  }
  out.require(worst <= 1e-12, "value drift " + std::to_string(worst));
  out.require(normalized > 0, "no accepted pairs");
  out.detail << normalized << " accepted pairs normalized, max relative value error " << worst;
}

void criterion6(Outcome& out) {
  const std::size_t n = 4;
  const auto chart = fixture::a4_demo_chart();
  const auto F = fixture::a4_pendulum();
  const auto s = symplectize(chart, F, {4, 3}, q(0));
  // G worked out by hand: int_0^{a1} A_{J,I}(x, J) dx with A_21 = x a2, A_31 = a3, A_41 = 1.
  const std::vector<Polynomial> G = {var(n, 1) * var(n, 1) * var(n, 2) * q(1, 2), var(n, 1) * var(n, 3), var(n, 1)};
  out.require(s.G == G, "G differs from the hand computation");

  // Push-forward under chi = psi + G(a): angle components gain sum_j dG/da_j * da_j/dt.
  const AAVectorField X = hamiltonian_vector_field(chart, F);
  AAVectorField pushed = X;
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t j = 0; j < n; ++j)
      pushed.dalpha[1 + m] += X.da[j] * G[m].derivative(j);
  const AAVectorField canonical = hamiltonian_vector_field(AlmostSymplecticChart::canonical(n, chart.domain()), s.F);
  out.require(pushed == canonical, "push-forward is not the canonical field");
  out.require(hamiltonian_vector_field(s.chart, s.F) == canonical, "symplectized chart field differs");
  out.require(s.exact_identity, "library did not certify the identity");

  // Numerics: original flow, then the shift, against the symplectized flow.
  IntegratorConfig cfg;
  cfg.output_dt = 0.5;
  const std::vector<double> x0 = {1.0, 0.5, 1.0, 1.0, 0.2, 0.0, 0.0, 0.0};
  auto shift = [&](std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t m = 0; m < 3; ++m) y[n + 1 + m] += G[m].evaluate(x.subspan(0, n));
    return y;
  };
  const Trajectory orig = integrate(X, x0, 100, cfg);
  const Trajectory symp = integrate(hamiltonian_vector_field(s.chart, s.F), shift(x0), 100, cfg);
  double worst = 0;
  out.require(orig.times.size() == symp.times.size(), "sample grids differ");
  for (std::size_t k = 0; k < std::min(orig.times.size(), symp.times.size()); ++k) {
    const auto y = shift(orig.states[k]);
    for (std::size_t i = 0; i < 2 * n; ++i) worst = std::max(worst, std::abs(y[i] - symp.states[k][i]));
  }
  out.require(worst <= 1e-6, "trajectory gap " + std::to_string(worst));
  out.detail << "exact identity holds; max trajectory gap " << worst << " over T = 100";
}

void criterion7(Outcome& out) {
  const auto chart = fixture::a5_chart();
  const auto F = fixture::a5_pendulum();
  const AAVectorField X = hamiltonian_vector_field(chart, F);
  out.require(divergence(X).is_zero(), "divergence is not exactly zero");
  IntegrateOptions opts;
  opts.monitors = {{"F", F}, {"a3", FourierFunction::action(5, 2)}, {"a4", FourierFunction::action(5, 3)},
                   {"a5", FourierFunction::action(5, 4)}};
  IntegratorConfig cfg;
  cfg.rtol = cfg.atol = 1e-10;
  cfg.output_dt = 0.1;
  // The two seeds of the shipped demo (regular and near-separatrix).
  const std::vector<std::vector<double>> seeds = {{5.0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {0.1, 0, 0, 0, 0, 3.0, 0, 0, 0, 0}};
  double worst = 0;
  for (const auto& x0 : seeds) {
    const Trajectory tr = integrate(X, x0, 1000, cfg, opts);
    out.require(tr.final_time() >= 1000 - 1e-9, "run stopped early");
    for (std::size_t m = 0; m < 4; ++m) worst = std::max(worst, tr.relative_drift(m));
  }
  out.require(worst <= 1e-8, "drift " + std::to_string(worst));
  out.detail << "max relative drift " << worst << " over T = 1000 at tol 1e-10; divergence == 0";
}

void criterion8(Outcome& out) {
  std::mt19937_64 rng(808);
  const std::size_t n = 5;
  const auto chart = fixture::a5_chart();
  const CTensor C = c_tensor(chart);
  int checked = 0;
  double fd_worst = 0;
  for (int t = 0; t < 20; ++t) {
    const FourierFunction F = fourier_on(rng, n, {0, 1}, 2, 2), G = fourier_on(rng, n, {0, 1}, 2, 2);
    out.require(is_fully_hamiltonian(chart, C, F).accepted && is_fully_hamiltonian(chart, C, G).accepted,
                "generated pair not fully-Hamiltonian");
    const AAVectorField XF = hamiltonian_vector_field(chart, F), XG = hamiltonian_vector_field(chart, G);
    const AAVectorField lhs = lie_bracket(XF, XG);
    const FourierFunction bracket = almost_poisson_bracket(chart, F, G);
    out.require(lhs == -hamiltonian_vector_field(chart, bracket), "identity fails on pair " + std::to_string(t));
    out.require(is_fully_hamiltonian(chart, C, bracket).accepted, "bracket left the fully-Hamiltonian class");
    // The commutator itself, by central differences: [X,Y] = DY X - DX Y.
    const auto a = reals(rng, n, -1, 1), al = reals(rng, n, 0, kTwoPi);
    const auto xf = eval_field(XF, a, al), xg = eval_field(XG, a, al);
    const double h = 1e-5;
    auto directional = [&](const AAVectorField& Y, const std::vector<double>& v) {
      auto ap = a, am = a, lp = al, lm = al;
      for (std::size_t i = 0; i < n; ++i) {
        ap[i] += h * v[i], am[i] -= h * v[i];
        lp[i] += h * v[n + i], lm[i] -= h * v[n + i];
      }
      const auto up = eval_field(Y, ap, lp), dn = eval_field(Y, am, lm);
      std::vector<double> d(2 * n);
      for (std::size_t i = 0; i < 2 * n; ++i) d[i] = (up[i] - dn[i]) / (2 * h);
      return d;
    };
    const auto dG = directional(XG, xf), dF = directional(XF, xg);
    const auto exact = eval_field(lhs, a, al);
    for (std::size_t i = 0; i < 2 * n; ++i)
      fd_worst = std::max(fd_worst, std::abs(exact[i] - (dG[i] - dF[i])) / std::max(1.0, std::abs(exact[i])));
    ++checked;
  }
  out.require(fd_worst <= 1e-5, "lie_bracket disagrees with finite differences");

  // Jacobi failure: cos alpha3, cos alpha4, cos alpha5.
  auto e = [&](std::size_t i) {
    HarmonicIndex nu(n, 0);
    nu[i] = 1;
    return FourierFunction::cosine(nu, cst(n, q(1)));
  };
  auto br = [&](const FourierFunction& x, const FourierFunction& y) { return almost_poisson_bracket(chart, x, y); };
  const auto f = e(2), g = e(3), k = e(4);
  const FourierFunction jac = br(f, br(g, k)) + br(g, br(k, f)) + br(k, br(f, g));
  const std::vector<double> a = {0.3, -0.2, 0.7, 0.1, 0.4}, al = {0.0, 0.0, 1.0, 0.5, 0.25};
  const double value = jac.evaluate(a, al);
  // By hand: {cos a3, cos a4} = A_34 sin a3 sin a4 = a5 sin a3 sin a4, the other two inner
  // brackets vanish (A_35 = A_45 = 0), so the Jacobiator is -sin a3 sin a4 sin a5.
  const double hand = -std::sin(al[2]) * std::sin(al[3]) * std::sin(al[4]);
  out.require(!jac.is_zero() && std::abs(value - hand) <= 1e-12 && std::abs(value) > 1e-3,
              "no Jacobi failure witness");
  out.detail << checked << " pairs exact, FD commutator error " << fd_worst << "; Jacobiator of cos alpha3,4,5 = "
             << jac.to_string() << " (value " << value << ")";
}

double max_gap_reduced(const Trajectory& full, const Trajectory& red, const std::vector<std::vector<double>>& psi,
                       std::size_t n, std::size_t r, Outcome& out) {
  out.require(full.times.size() == red.times.size(), "sample grids differ");
  double worst = 0;
  for (std::size_t s = 0; s < std::min(full.times.size(), red.times.size()); ++s) {
    for (std::size_t i = 0; i < r; ++i) {
      worst = std::max(worst, std::abs(red.states[s][i] - full.states[s][i]));
      worst = std::max(worst, std::abs(red.states[s][r + i] - full.states[s][n + i]));
    }
    for (std::size_t m = 0; m < n - r; ++m) worst = std::max(worst, std::abs(psi[s][m] - full.states[s][n + r + m]));
  }
  return worst;
}

void criterion9(Outcome& out) {
  IntegratorConfig cfg;
  cfg.output_dt = 0.5;
  IntegrateOptions dense;
  dense.keep_dense = true;
  double worst = 0;
  {
    const auto chart = fixture::a4_demo_chart();
    const auto F = fixture::a4_pendulum();
    const std::vector<double> x0 = {1.0, 0.5, 1.0, 1.0, 0.2, 0.1, -0.3, 2.0};
    const ReducedSystem red = reduce(chart, F, {4, 3}, {q(1, 2), q(1), q(1)});
    const Trajectory full = integrate(hamiltonian_vector_field(chart, F), x0, 100, cfg);
    const std::vector<double> y0 = {x0[0], x0[4]}, psi0 = {x0[5], x0[6], x0[7]};
    const Trajectory tr = integrate(red.vector_field(), y0, 100, cfg, dense);
    const double gap = max_gap_reduced(full, tr, reconstruct(red, tr, psi0), 4, 1, out);
    out.detail << "A4 gap " << gap << "; ";
    worst = std::max(worst, gap);
  }
  {
    const auto chart = fixture::a5_chart();
    const auto F = fixture::a5_pendulum();
    const ReducedSystem red = reduce(chart, F, {5, 3}, {q(0), q(0), q(0)});
    auto run = [&](const std::vector<double>& x0) {
      const Trajectory full = integrate(hamiltonian_vector_field(chart, F), x0, 100, cfg);
      const std::vector<double> y0 = {x0[0], x0[1], x0[5], x0[6]}, psi0 = {x0[7], x0[8], x0[9]};
      const Trajectory tr = integrate(red.vector_field(), y0, 100, cfg, dense);
      return max_gap_reduced(full, tr, reconstruct(red, tr, psi0), 5, 2, out);
    };
    const double gap = run({5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.4, -1.0, 2.0});
    worst = std::max(worst, gap);
    // Not gated: two independent integrations of a chaotic orbit separate like exp(0.18 t),
    // so this measures error amplification rather than the reduction.
    const double chaotic = run({0.1, 0.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.4, -1.0, 2.0});
    out.detail << "A5 gap " << gap << " (near-separatrix seed, informational: " << chaotic << ")";
  }
  out.require(worst <= 1e-6, "gap " + std::to_string(worst));
}

// Fixed thresholds, the same numbers the analyze command reports.
constexpr double kMleIntegrableMax = 0.005;
constexpr double kMleChaoticMin = 0.01;
constexpr double kStationaryMax = 0.01;
constexpr double kCurveResidualMax = 0.01;
constexpr double kAreaOccupancyMin = 0.4;
constexpr std::size_t kMinSectionPoints = 200;
constexpr double kDichotomyT = 5000;

void criterion10(Outcome& out) {
  IntegratorConfig cfg;
  cfg.output_dt = 1.0;
  {
    const AAVectorField X = hamiltonian_vector_field(fixture::a4_demo_chart(), fixture::a4_pendulum());
    for (const auto& x0 : {std::vector<double>{1.0, 0.5, 1.0, 1.0, 0, 0, 0, 0},
                           std::vector<double>{2.5, -1.0, 2.0, 0.5, 0, 1, 2, 3}}) {
      const double mle = lyapunov_mle(X, x0, kDichotomyT, cfg).mle;
      const double stat = rotation_stationarity(integrate(X, x0, kDichotomyT, cfg));
      out.require(mle <= kMleIntegrableMax, "A4 MLE " + std::to_string(mle));
      out.require(stat <= kStationaryMax, "A4 rotation numbers drift " + std::to_string(stat));
      out.detail << "A4 mle " << mle << " stat " << stat << "; ";
    }
  }
  const std::size_t n = 5;
  const AAVectorField X = hamiltonian_vector_field(fixture::a5_chart(), fixture::a5_pendulum());
  const Section sec{1, 0.0};
  {
    const std::vector<double> x0 = {0.1, 0, 0, 0, 0, 3.0, 0, 0, 0, 0};
    const double mle = lyapunov_mle(X, x0, kDichotomyT, cfg).mle;
    const SectionShape sh = section_shape(poincare_section(X, x0, kDichotomyT, cfg, sec), n, 0, 0);
    out.require(mle > kMleChaoticMin, "A5 chaotic MLE " + std::to_string(mle));
    out.require(sh.points >= kMinSectionPoints, "too few section points");
    out.require(sh.graph_residual > kCurveResidualMax && sh.occupancy >= kAreaOccupancyMin, "A5 chaotic section not area-filling");
    out.detail << "A5 chaotic mle " << mle << " occupancy " << sh.occupancy << "; ";
  }
  {
    const std::vector<double> x0 = {5.0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    const SectionShape sh = section_shape(poincare_section(X, x0, kDichotomyT, cfg, sec), n, 0, 0);
    out.require(sh.points >= kMinSectionPoints, "too few section points");
    out.require(sh.graph_residual <= kCurveResidualMax, "A5 regular section is not a curve");
    out.detail << "A5 regular residual " << sh.graph_residual << " (" << sh.points << " points)";
  }
}

void criterion11(Outcome& out) {
  std::mt19937_64 rng(1111);
  std::uniform_int_distribution<int> dim(1, 6);
  int bad = 0;
  for (int t = 0; t < 500; ++t) {
    const auto V = random_integer_matrix(rng, static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)), 9);
    const auto h = hermite_normal_form(V);
    const auto s = smith_normal_form(V);
    const bool ok = h.U * V == h.H && abs(cofactor_determinant(h.U)) == 1 && is_row_hermite(h.H) &&
                    s.U * V * s.W == s.D && abs(cofactor_determinant(s.U)) == 1 &&
                    abs(cofactor_determinant(s.W)) == 1 && is_smith_diagonal(s.D) &&
                    s.rank == rank_of(to_rational_rows(V));
    bad += !ok;
  }
  out.require(bad == 0, std::to_string(bad) + " bad normal forms");

  int bad_sat = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const auto gens = random_generators(rng, n, 1 + t % static_cast<int>(n), 3);
    const auto L = saturate_and_complete(gens, n);
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : gens) rows.push_back(to_q(g));
    const std::size_t r = rank_of(rows);
    bool ok = L.r == r && L.saturation_basis.size() == r;
    for (const auto& u : L.saturation_basis) rows.push_back(to_q(u));
    ok &= rank_of(rows) == r;
    for (const auto& p : lattice_points_in_span(gens, n, 5)) ok &= in_integer_span(L.saturation_basis, p);
    ok &= abs(cofactor_determinant(L.M)) == 1;
    bad_sat += !ok;
  }
  out.require(bad_sat == 0, std::to_string(bad_sat) + " bad saturations");
  out.detail << "500 HNF/SNF, 100 saturations over [-5,5]^n; failures " << bad << " + " << bad_sat;
}

}  // namespace

int main() {
  const std::vector<Pair> pairs = pair_family();
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // wall-clock limit, 0 = none
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "C-tensor of A4", 1.0, criterion1},
      {2, "A5 classification", 5.0, criterion2},
      {3, "kernel bound", 0, criterion3},
      {4, "pointwise vs symbolic test", 0, [&](Outcome& o) { criterion4(o, pairs); }},
      {5, "normalization", 0, [&](Outcome& o) { criterion5(o, pairs); }},
      {6, "symplectization of A4", 0, criterion6},
      {7, "conservation on A5", 0, criterion7},
      {8, "Lie-algebra identity", 0, criterion8},
      {9, "reduction commutes", 0, criterion9},
      {10, "dynamics dichotomy", 0, criterion10},
      {11, "lattice oracles", 0, criterion11},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) out.require(secs <= c.budget_s, "over time budget");
    failed += !out.pass;
    std::printf("%s criterion %d (%s) [%.2fs]: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
