#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asympl/chart.hpp"

namespace asympl {

/// x' = f(t, x).
using OdeRhs = std::function<void(double t, std::span<const double> x, std::span<double> dx)>;

struct IntegratorConfig {
  enum class Method { rk4, dop853 };
  Method method = Method::dop853;
  double rtol = 1e-10;
  double atol = 1e-10;
  /// Fixed step for rk4; initial step for dop853 (0 picks one automatically).
  double step = 0.0;
  double min_step = 1e-13;
  std::size_t max_steps = 100'000'000;
  /// Sampling interval of stored trajectory states; 0 keeps every accepted step.
  double output_dt = 0.0;
};

/// One accepted step together with its continuous extension (degree 7 for
/// dop853, cubic Hermite for rk4).
class DenseStep {
 public:
  double t0 = 0.0;
  double t1 = 0.0;

  std::size_t dim() const { return dim_; }
  void evaluate(double t, std::span<double> out) const;
  std::vector<double> evaluate(double t) const;
  std::span<const double> start() const { return {coeffs_.data(), dim_}; }
  std::vector<double> end() const { return evaluate(t1); }

  static DenseStep dop853(double t0, double t1, std::vector<double> r);
  static DenseStep hermite(double t0, double t1, std::span<const double> y0, std::span<const double> y1,
                           std::span<const double> f0, std::span<const double> f1);

 private:
  std::size_t dim_ = 0;
  int kind_ = 0;  // 0 = dop853 (8 blocks), 1 = hermite (4 blocks)
  std::vector<double> coeffs_;
};

/// Called after every accepted step; returning false stops the integration.
using StepObserver = std::function<bool(const DenseStep&)>;

/// Integrates from t0 to t0 + T (T >= 0) in place. Returns the time reached,
/// which is earlier than t0 + T only if the observer stopped the run.
/// Throws NumericalError on step-size underflow or an exhausted step budget.
double solve_ode(const OdeRhs& f, double t0, std::vector<double>& x, double T,
                 const IntegratorConfig& cfg, const StepObserver& observer = {});

/// AAVectorField compiled to doubles; the state is (a_1..a_n, alpha_1..alpha_n).
class NumericField {
 public:
  NumericField() = default;
  explicit NumericField(const AAVectorField& X);

  std::size_t n() const { return n_; }
  void operator()(std::span<const double> x, std::span<double> dx) const;
  OdeRhs rhs() const;

 private:
  struct Term {
    std::size_t mode;
    NumericPolynomial cos_coeff;
    NumericPolynomial sin_coeff;
  };
  std::size_t n_ = 0;
  unsigned max_degree_ = 0;
  std::vector<std::vector<double>> modes_;      // distinct harmonic indices
  std::vector<std::vector<Term>> components_;  // 2n components
};

struct Trajectory {
  std::size_t n = 0;
  std::vector<double> times;
  /// (a, alpha) per sample, angles unwrapped.
  std::vector<std::vector<double>> states;
  std::vector<std::string> monitor_names;
  /// monitors[s][m]: value of monitor m at sample s.
  std::vector<std::vector<double>> monitors;
  /// Continuous extension of every accepted step (only if requested).
  std::vector<DenseStep> dense;
  bool exited_domain = false;
  double exit_time = 0.0;
  std::vector<std::string> warnings;

  double final_time() const { return times.empty() ? 0.0 : times.back(); }
  /// State at time t from the dense output (requires keep_dense).
  std::vector<double> state_at(double t) const;
  /// max_s |m_s - m_0| / max(|m_0|, 1).
  double relative_drift(std::size_t monitor) const;
};

struct IntegrateOptions {
  std::vector<std::pair<std::string, FourierFunction>> monitors;
  /// Actions leaving this box stop the run; the exit time is located on the dense output.
  std::optional<Box> domain;
  bool keep_dense = false;
};

Trajectory integrate(const AAVectorField& X, std::span<const double> x0, double T,
                     const IntegratorConfig& cfg, const IntegrateOptions& opts = {});

/// Angles reduced to [0, 2 pi).
std::vector<double> wrap_angles(std::span<const double> state, std::size_t n);

/// (alpha_i(T) - alpha_i(0)) / T per angle; warns below T = 100.
std::vector<double> rotation_numbers(const Trajectory& traj, std::string* warning = nullptr);
/// max_i |w_i(first half) - w_i(second half)|; O(1/T) on a quasi-periodic orbit.
double rotation_stationarity(const Trajectory& traj);

struct LyapunovEstimate {
  double mle = 0.0;
  double separation = 1e-8;
  double interval = 1.0;
  /// (time, running estimate) after each renormalization.
  std::vector<std::pair<double, double>> trace;
  std::vector<std::string> warnings;
};

/// Two-trajectory renormalization estimate of the largest Lyapunov exponent.
/// Both copies are advanced as one system so they share every step.
LyapunovEstimate lyapunov_mle(const AAVectorField& X, std::span<const double> x0, double T,
                              const IntegratorConfig& cfg, double separation = 1e-8,
                              double interval = 1.0);

struct Section {
  std::size_t angle = 0;  // 0-based
  double value = 0.0;
};

struct SectionPoints {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::string> warnings;
};

/// Upward crossings of alpha_angle through value (mod 2 pi), refined on the
/// dense output to 1e-10 in time.
SectionPoints poincare_section(const AAVectorField& X, std::span<const double> x0, double T,
                               const IntegratorConfig& cfg, const Section& section);

/// Shape of a section scatter in the plane (alpha_p mod 2 pi, a_q).
struct SectionShape {
  std::size_t points = 0;
  /// Fraction of occupied cells of a bins x bins grid over the bounding box.
  double occupancy = 0.0;
  /// Mean over angle columns of the a_q spread, relative to the a_q range:
  /// small when the points lie on a graph a_q = f(alpha_p).
  double graph_residual = 0.0;
};

SectionShape section_shape(const SectionPoints& pts, std::size_t n, std::size_t angle_p,
                           std::size_t action_q, std::size_t bins = 20);

}  // namespace asympl
