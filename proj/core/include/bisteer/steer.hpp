#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bisteer/control.hpp"
#include "bisteer/grid.hpp"
#include "bisteer/nonlinearity.hpp"
#include "bisteer/pde.hpp"

namespace bisteer {

/// Everything a steering pipeline needs: the state pair, the control
/// support, the reaction term, the target precision and the solver policy.
struct SteeringProblem {
  Field y0;
  Field yd;
  SupportMask support;
  NonlinearitySpec nonlinearity = NonlinearitySpec::zero();

  double epsilon = 0.05;    // target precision in the discrete L2 norm
  double T0 = 1.0;          // horizon; attempted times are T0*shrink^k
  int steps_per_T = 500;    // dt = T / steps_per_T, at least 100
  double shrink = 0.5;      // geometric factor for the time search, in (0,1)
  double T_min = 1e-7;      // floor for the attempted steering time

  double zero_threshold = -1.0;  // node counts as zero below this; <0 resolves
                                 // to 1e-8 * linf_norm(y0)
  double a_max = 50.0;           // sup-norm budget for the synthesized exponent
  double delta_E = -1.0;         // cancellation support threshold; <0 -> zero_threshold

  double hold_residual_tol = 1e-6;  // equilibrium defect allowed in fixed-time runs
  double hold_g_max = 1e4;          // sup-norm budget for the hold coefficient

  double resolved_zero_threshold() const;
  double resolved_delta_E() const;
  void validate() const;  // throws InvalidArgument on malformed parameters
};

enum class SteeringOutcome { success, exhausted_T, inadmissible };

const char* to_string(SteeringOutcome outcome);

struct SteeringAttempt {
  double T = 0.0;
  double dt = 0.0;
  double error = 0.0;
};

struct SteeringReport {
  SteeringOutcome outcome = SteeringOutcome::inadmissible;
  double chosen_T = 0.0;
  double final_error = -1.0;
  double epsilon = 0.0;
  std::string control_description;
  std::vector<SteeringAttempt> attempts;

  // sparse trajectory snapshots of the accepted run
  std::vector<double> sample_times;
  std::vector<Field> sample_states;

  // empirical constants fitted from the attempt log (log error vs log T)
  double fitted_slope = 0.0;
  double fitted_intercept = 0.0;
  bool has_fit = false;

  // run-level bound max_t ||y(t)|| <= K (1 + ||y0||) of the accepted run
  double apriori_bound = 0.0;

  std::optional<AdmissibilityReport> admissibility;
  std::string message;

  bool success() const { return outcome == SteeringOutcome::success; }
};

/// Geometric search for a steering time: synthesizes the log-ratio exponent
/// (or the null control when it vanishes), then shrinks T until the final
/// error beats epsilon or the T_min floor is hit.
SteeringReport steer_theorem1(const SteeringProblem& problem);

/// Mollified variant for ratios that are only square integrable: smooths
/// h = yd/y0 until linf(y0)*l2(h_r - h) < epsilon/2, then runs the time
/// search against the surrogate target h_r*y0 with bar epsilon/2. Requires
/// a full control support.
SteeringReport steer_corollary1(const SteeringProblem& problem);

/// Steering within a prescribed time T: reaches a neighborhood of the target
/// quickly (phase 1), then holds it with the equilibrium coefficient g while
/// the reaction is removed by the cancellation feedback. Case (b): a merely
/// nonnegative target is first replaced by its mollification. Requires a full
/// support and a declared linear-growth constant.
SteeringReport steer_fixed_time(const SteeringProblem& problem, double T);

struct BernsteinDemoReport {
  int degree = 0;
  double T = 0.0;
  double dt = 0.0;
  double sup_state_gap = 0.0;     // sup_t l2(y - y_n)
  double sup_forcing_gap = 0.0;   // sup_t l2(F_n - F)
  double gronwall_bound = 0.0;    // e^{linf(a)} * T * sup_forcing_gap
  double exp_identity_residual = 0.0;
  double a_linf = 0.0;
};

/// Replays a static-control run against the auxiliary linear system whose
/// forcing is the degree-n Bernstein approximation of F(t) = f(t, y(t)),
/// and reports the state gap, the forcing gap, the Gronwall-form bound
/// relating them, and the defect of the exponential variation-of-constants
/// identity for the auxiliary orbit.
BernsteinDemoReport bernstein_pipeline_demo(const SteeringProblem& problem, double T,
                                            int degree);

/// Default auxiliary degree ceil(4/T^2 * log(1/eps)), capped at 10^4.
int default_bernstein_degree(double T, double epsilon);

struct ConvergenceRow {
  double T = 0.0;
  double dt = 0.0;
  double error = 0.0;
  double slope_running = 0.0;  // NaN in the first row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;      // least-squares slope of log error vs log T
  double intercept = 0.0;
  double rate_constant = 0.0;  // e^{intercept}, the empirical error/T constant
};

/// Error-versus-time study under the static log-ratio control. T_list must
/// hold at least 3 strictly decreasing times.
ConvergenceTable convergence_study(const SteeringProblem& problem,
                                   const std::vector<double>& T_list);

struct ResolventRow {
  double lambda = 0.0;
  double initial_gap = 0.0;     // l2(lambda R(lambda) y0 - y0)
  double trajectory_gap = 0.0;  // l2(y_lambda(T) - y(T)) under the same control
  double gronwall_constant = 0.0;  // e^{linf(a) + L*T}
};

struct ResolventReport {
  double T = 0.0;
  std::vector<ResolventRow> rows;
};

/// Smooths the initial state through the resolvent at each lambda and
/// measures how the initial gap propagates along the controlled flow over
/// T = T0 * shrink. lambda_list must be positive and increasing.
ResolventReport resolvent_prefilter(const SteeringProblem& problem,
                                    const std::vector<double>& lambda_list);

}  // namespace bisteer
