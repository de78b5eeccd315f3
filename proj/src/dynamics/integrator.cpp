#include <algorithm>
#include <cmath>

#include "asympl/dynamics.hpp"
#include "asympl/errors.hpp"
#include "dop853_coefficients.hpp"

namespace asympl {

DenseStep DenseStep::dop853(double t0, double t1, std::vector<double> r) {
  DenseStep s;
  s.t0 = t0;
  s.t1 = t1;
  s.dim_ = r.size() / 8;
  s.kind_ = 0;
  s.coeffs_ = std::move(r);
  return s;
}

DenseStep DenseStep::hermite(double t0, double t1, std::span<const double> y0,
                             std::span<const double> y1, std::span<const double> f0,
                             std::span<const double> f1) {
  DenseStep s;
  s.t0 = t0;
  s.t1 = t1;
  s.dim_ = y0.size();
  s.kind_ = 1;
  const double h = t1 - t0;
  s.coeffs_.resize(4 * s.dim_);
  for (std::size_t i = 0; i < s.dim_; ++i) {
    s.coeffs_[i] = y0[i];
    s.coeffs_[s.dim_ + i] = y1[i];
    s.coeffs_[2 * s.dim_ + i] = h * f0[i];
    s.coeffs_[3 * s.dim_ + i] = h * f1[i];
  }
  return s;
}

void DenseStep::evaluate(double t, std::span<double> out) const {
  const std::size_t d = dim_;
  const double s = (t - t0) / (t1 - t0);
  const double s1 = 1.0 - s;
  const double* r = coeffs_.data();
  if (kind_ == 0) {
    for (std::size_t i = 0; i < d; ++i) {
      const double conpar = r[4 * d + i] + s * (r[5 * d + i] + s1 * (r[6 * d + i] + s * r[7 * d + i]));
      out[i] = r[i] + s * (r[d + i] + s1 * (r[2 * d + i] + s * (r[3 * d + i] + s1 * conpar)));
    }
  } else {
    const double h00 = (1 + 2 * s) * s1 * s1, h10 = s * s1 * s1;
    const double h01 = s * s * (3 - 2 * s), h11 = -s * s * s1;
    for (std::size_t i = 0; i < d; ++i)
      out[i] = h00 * r[i] + h01 * r[d + i] + h10 * r[2 * d + i] + h11 * r[3 * d + i];
  }
}

std::vector<double> DenseStep::evaluate(double t) const {
  std::vector<double> out(dim_);
  evaluate(t, out);
  return out;
}

namespace {

double solve_rk4(const OdeRhs& f, double t0, std::vector<double>& y, double T,
                 const IntegratorConfig& cfg, const StepObserver& observer) {
  const std::size_t d = y.size();
  const double target = cfg.step > 0 ? cfg.step : 1e-3;
  const auto steps = static_cast<std::size_t>(std::ceil(T / target - 1e-9));
  if (steps > cfg.max_steps) throw NumericalError("fixed-step run exceeds the step budget");
  const double h = steps ? T / static_cast<double>(steps) : 0.0;
  std::vector<double> k1(d), k2(d), k3(d), k4(d), w(d), ynew(d), fnew(d);
  double t = t0;
  f(t, y, k1);
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + 0.5 * h * k1[i];
    f(t + 0.5 * h, w, k2);
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + 0.5 * h * k2[i];
    f(t + 0.5 * h, w, k3);
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + h * k3[i];
    f(t + h, w, k4);
    for (std::size_t i = 0; i < d; ++i)
      ynew[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    const double tnew = (s + 1 == steps) ? t0 + T : t + h;
    f(tnew, ynew, fnew);
    const bool go_on = !observer || observer(DenseStep::hermite(t, tnew, y, ynew, k1, fnew));
    y.swap(ynew);
    k1.swap(fnew);
    t = tnew;
    if (!go_on) break;
  }
  return t;
}

double solve_dop853(const OdeRhs& f, double t0, std::vector<double>& y, double T,
                    const IntegratorConfig& cfg, const StepObserver& observer) {
  using namespace dop853;
  const std::size_t d = y.size();
  const double tend = t0 + T;
  const double rtol = cfg.rtol, atol = cfg.atol;
  if (!(rtol > 0) || !(atol > 0)) throw ValidationError("integrator tolerances must be positive");

  std::vector<double> k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), k7(d), k8(d), k9(d), k10(d),
      k11(d), k12(d), k14(d), k15(d), k16(d), w(d), ynew(d), fnew(d);
  double t = t0;
  f(t, y, k1);
  if (T <= 0) return t;

  auto scale = [&](double v) { return atol + rtol * std::abs(v); };
  double h = cfg.step;
  if (!(h > 0)) {
    // Hairer's starting-step heuristic.
    double dnf = 0, dny = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const double sk = scale(y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, T);
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + h * k1[i];
    f(t + h, w, k2);
    double der2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const double e = (k2[i] - k1[i]) / scale(y[i]);
      der2 += e * e;
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 =
        der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 1.0 / 8.0);
    h = std::min({100 * h, h1, T});
  }

  constexpr double safe = 0.9, facc1 = 1.0 / 0.333, facc2 = 1.0 / 6.0;
  bool reject = false;
  std::size_t steps = 0;
  while (t < tend) {
    if (++steps > cfg.max_steps) throw NumericalError("adaptive run exceeds the step budget");
    if (h < cfg.min_step * std::max(1.0, std::abs(t)))
      throw NumericalError("step size underflow at t = " + std::to_string(t));
    if (t + 1.01 * h >= tend) h = tend - t;

    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, w, k2);
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, w, k3);
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + h * (a41 * k1[i] + a43 * k3[i]);
    f(t + c4 * h, w, k4);
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + h * (a51 * k1[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, w, k5);
    for (std::size_t i = 0; i < d; ++i) w[i] = y[i] + h * (a61 * k1[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + c6 * h, w, k6);
    for (std::size_t i = 0; i < d; ++i)
      w[i] = y[i] + h * (a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(t + c7 * h, w, k7);
    for (std::size_t i = 0; i < d; ++i)
      w[i] = y[i] + h * (a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
    f(t + c8 * h, w, k8);
    for (std::size_t i = 0; i < d; ++i)
      w[i] = y[i] + h * (a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] +
                         a98 * k8[i]);
    f(t + c9 * h, w, k9);
    for (std::size_t i = 0; i < d; ++i)
      w[i] = y[i] + h * (a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                         a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
    f(t + c10 * h, w, k10);
    for (std::size_t i = 0; i < d; ++i)
      w[i] = y[i] + h * (a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                         a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
    f(t + c11 * h, w, k11);
    for (std::size_t i = 0; i < d; ++i)
      w[i] = y[i] + h * (a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                         a127 * k7[i] + a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] +
                         a1211 * k11[i]);
    f(t + h, w, k12);

    double err = 0, err2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const double bsum = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                          b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
      ynew[i] = y[i] + h * bsum;
      const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double e3 = bsum - e31 * k1[i] - e32 * k9[i] - e33 * k12[i];
      const double e5 = e51 * k1[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] + e59 * k9[i] +
                        e510 * k10[i] + e511 * k11[i] + e512 * k12[i];
      err2 += (e3 / sk) * (e3 / sk);
      err += (e5 / sk) * (e5 / sk);
    }
    double deno = err + 0.01 * err2;
    if (deno <= 0) deno = 1;
    err = std::abs(h) * err * std::sqrt(1.0 / (static_cast<double>(d) * deno));
    if (!std::isfinite(err)) {
      h *= 0.1;
      reject = true;
      continue;
    }

    const double fac11 = std::pow(err, 0.125);
    double fac = std::max(facc2, std::min(facc1, fac11 / safe));
    double hnew = h / fac;
    if (err <= 1.0) {
      const double tnew = (t + h >= tend) ? tend : t + h;
      f(tnew, ynew, fnew);
      bool go_on = true;
      if (observer) {
        std::vector<double> r(8 * d);
        for (std::size_t i = 0; i < d; ++i) {
          r[i] = y[i];
          r[d + i] = ynew[i] - y[i];
          r[2 * d + i] = h * k1[i] - r[d + i];
          r[3 * d + i] = r[d + i] - h * fnew[i] - r[2 * d + i];
          r[4 * d + i] = d41 * k1[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] + d49 * k9[i] +
                         d410 * k10[i] + d411 * k11[i] + d412 * k12[i];
          r[5 * d + i] = d51 * k1[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] + d59 * k9[i] +
                         d510 * k10[i] + d511 * k11[i] + d512 * k12[i];
          r[6 * d + i] = d61 * k1[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] + d69 * k9[i] +
                         d610 * k10[i] + d611 * k11[i] + d612 * k12[i];
          r[7 * d + i] = d71 * k1[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] + d79 * k9[i] +
                         d710 * k10[i] + d711 * k11[i] + d712 * k12[i];
        }
        for (std::size_t i = 0; i < d; ++i)
          w[i] = y[i] + h * (a141 * k1[i] + a147 * k7[i] + a148 * k8[i] + a149 * k9[i] +
                             a1410 * k10[i] + a1411 * k11[i] + a1412 * k12[i] + a1413 * fnew[i]);
        f(t + c14 * h, w, k14);
        for (std::size_t i = 0; i < d; ++i)
          w[i] = y[i] + h * (a151 * k1[i] + a156 * k6[i] + a157 * k7[i] + a158 * k8[i] +
                             a1511 * k11[i] + a1512 * k12[i] + a1513 * fnew[i] + a1514 * k14[i]);
        f(t + c15 * h, w, k15);
        for (std::size_t i = 0; i < d; ++i)
          w[i] = y[i] + h * (a161 * k1[i] + a166 * k6[i] + a167 * k7[i] + a168 * k8[i] +
                             a169 * k9[i] + a1613 * fnew[i] + a1614 * k14[i] + a1615 * k15[i]);
        f(t + c16 * h, w, k16);
        for (std::size_t i = 0; i < d; ++i) {
          r[4 * d + i] = h * (r[4 * d + i] + d413 * fnew[i] + d414 * k14[i] + d415 * k15[i] + d416 * k16[i]);
          r[5 * d + i] = h * (r[5 * d + i] + d513 * fnew[i] + d514 * k14[i] + d515 * k15[i] + d516 * k16[i]);
          r[6 * d + i] = h * (r[6 * d + i] + d613 * fnew[i] + d614 * k14[i] + d615 * k15[i] + d616 * k16[i]);
          r[7 * d + i] = h * (r[7 * d + i] + d713 * fnew[i] + d714 * k14[i] + d715 * k15[i] + d716 * k16[i]);
        }
        go_on = observer(DenseStep::dop853(t, tnew, std::move(r)));
      }
      y.swap(ynew);
      k1.swap(fnew);
      t = tnew;
      if (!go_on) break;
      if (reject) hnew = std::min(hnew, h);
      reject = false;
    } else {
      hnew = h / std::min(facc1, fac11 / safe);
      reject = true;
    }
    h = hnew;
  }
  return t;
}

}  // namespace

double solve_ode(const OdeRhs& f, double t0, std::vector<double>& x, double T,
                 const IntegratorConfig& cfg, const StepObserver& observer) {
  if (T < 0) throw ValidationError("integration length must be non-negative");
  return cfg.method == IntegratorConfig::Method::rk4 ? solve_rk4(f, t0, x, T, cfg, observer)
                                                      : solve_dop853(f, t0, x, T, cfg, observer);
}

}  // namespace asympl
