#include "bisteer/steer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bisteer/bernstein.hpp"
#include "bisteer/mollifier.hpp"

namespace bisteer {

namespace {

constexpr int kMaxAttempts = 64;

void fit_loglog(const std::vector<SteeringAttempt>& attempts, SteeringReport& report) {
  std::vector<double> lx, ly;
  for (const SteeringAttempt& a : attempts) {
    if (a.T > 0.0 && a.error > 0.0) {
      lx.push_back(std::log(a.T));
      ly.push_back(std::log(a.error));
    }
  }
  if (lx.size() < 2) return;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  if (den <= 0.0) return;
  report.fitted_slope = num / den;
  report.fitted_intercept = my - report.fitted_slope * mx;
  report.has_fit = true;
}

void record_run(const Trajectory& traj, const Field& y0, SteeringReport& report) {
  const std::size_t K = traj.step_count();
  const std::size_t stride = std::max<std::size_t>(1, K / 10);
  for (std::size_t k = 0; k <= K; k += stride) {
    report.sample_times.push_back(traj.times[k]);
    report.sample_states.push_back(traj.states[k]);
  }
  if (report.sample_times.back() != traj.times.back()) {
    report.sample_times.push_back(traj.times.back());
    report.sample_states.push_back(traj.states.back());
  }
  double max_norm = 0.0;
  for (const Field& s : traj.states) max_norm = std::max(max_norm, l2_norm(s));
  report.apriori_bound = max_norm / (1.0 + l2_norm(y0));
}

// Shared geometric-in-T search loop. `loop_target` is the state the error is
// measured against for the success decision; `true_target` is what the
// recorded attempt errors refer to. They coincide except in the mollified
// pipeline, where success additionally requires the true error under the
// caller-supplied bar.
struct TimeSearchSpec {
  const Field* exponent = nullptr;  // null means the null control
  const Field* loop_target = nullptr;
  double loop_bar = 0.0;
  const Field* true_target = nullptr;
  double true_bar = 0.0;
};

void run_time_search(const SteeringProblem& problem, const TimeSearchSpec& spec,
                     SteeringReport& report) {
  const Field zero = Field::zeros(problem.y0.grid());
  const Field& a = spec.exponent ? *spec.exponent : zero;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    const double T = problem.T0 * std::pow(problem.shrink, attempt);
    if (T < problem.T_min) {
      report.outcome = SteeringOutcome::exhausted_T;
      std::ostringstream oss;
      oss << "time search exhausted: next T=" << T << " fell below the floor T_min="
          << problem.T_min << " after " << report.attempts.size() << " attempt(s)";
      report.message += oss.str();
      fit_loglog(report.attempts, report);
      return;
    }
    const double dt = T / problem.steps_per_T;
    const ControlSchedule control = static_control(a, T);
    const Trajectory traj = simulate(problem.y0, control, problem.nonlinearity, T, dt);
    const double loop_error = l2_norm(traj.final_state() - *spec.loop_target);
    const double true_error = spec.true_target == spec.loop_target
                                  ? loop_error
                                  : l2_norm(traj.final_state() - *spec.true_target);
    report.attempts.push_back({T, dt, true_error});
    if (loop_error < spec.loop_bar && true_error < spec.true_bar) {
      report.outcome = SteeringOutcome::success;
      report.chosen_T = T;
      report.final_error = true_error;
      report.control_description = control.describe();
      record_run(traj, problem.y0, report);
      fit_loglog(report.attempts, report);
      return;
    }
  }
  report.outcome = SteeringOutcome::exhausted_T;
  report.message += "time search exhausted: attempt limit reached";
  fit_loglog(report.attempts, report);
}

}  // namespace

double SteeringProblem::resolved_zero_threshold() const {
  if (zero_threshold > 0.0) return zero_threshold;
  const double scale = linf_norm(y0);
  return 1e-8 * (scale > 0.0 ? scale : 1.0);
}

double SteeringProblem::resolved_delta_E() const {
  return delta_E > 0.0 ? delta_E : resolved_zero_threshold();
}

void SteeringProblem::validate() const {
  require_same_grid(y0, yd);
  if (!(y0.grid() == support.grid())) {
    throw InvalidArgument("SteeringProblem: mask grid mismatch");
  }
  if (!(epsilon > 0.0)) throw InvalidArgument("SteeringProblem: epsilon must be positive");
  if (!(T0 > 0.0)) throw InvalidArgument("SteeringProblem: T0 must be positive");
  if (steps_per_T < 100) {
    throw InvalidArgument("SteeringProblem: need at least 100 steps per T");
  }
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw InvalidArgument("SteeringProblem: shrink factor must lie in (0, 1)");
  }
  if (!(T_min > 0.0)) throw InvalidArgument("SteeringProblem: T_min must be positive");
  if (!(a_max > 0.0)) throw InvalidArgument("SteeringProblem: a_max must be positive");
}

const char* to_string(SteeringOutcome outcome) {
  switch (outcome) {
    case SteeringOutcome::success: return "success";
    case SteeringOutcome::exhausted_T: return "exhausted-T";
    case SteeringOutcome::inadmissible: return "inadmissible";
  }
  return "unknown";
}

SteeringReport steer_theorem1(const SteeringProblem& problem) {
  problem.validate();
  SteeringReport report;
  report.epsilon = problem.epsilon;

  const double delta = problem.resolved_zero_threshold();
  report.admissibility =
      check_admissibility(problem.y0, problem.yd, problem.support, delta, problem.a_max);
  if (!report.admissibility->pass()) {
    report.outcome = SteeringOutcome::inadmissible;
    report.message = "steering hypotheses fail; see admissibility report";
    return report;
  }

  const Field a = log_ratio(problem.y0, problem.yd, problem.support, delta, problem.a_max);
  const bool null_control = linf_norm(a) == 0.0;
  if (null_control) report.message = "exponent vanishes; using the null control. ";

  TimeSearchSpec spec;
  spec.exponent = null_control ? nullptr : &a;
  spec.loop_target = &problem.yd;
  spec.loop_bar = problem.epsilon;
  spec.true_target = &problem.yd;
  spec.true_bar = problem.epsilon;
  run_time_search(problem, spec, report);
  return report;
}

SteeringReport steer_corollary1(const SteeringProblem& problem) {
  problem.validate();
  if (!problem.support.is_full()) {
    throw InvalidArgument("steer_corollary1: requires a full control support");
  }
  SteeringReport report;
  report.epsilon = problem.epsilon;

  const double delta = problem.resolved_zero_threshold();
  // Sign and matched-zero hypotheses only; the ratio need not be bounded.
  report.admissibility =
      check_admissibility(problem.y0, problem.yd, problem.support, delta,
                          std::numeric_limits<double>::infinity());
  if (!report.admissibility->pass()) {
    report.outcome = SteeringOutcome::inadmissible;
    report.message = "sign or zero-set hypotheses fail; see admissibility report";
    return report;
  }

  std::vector<double> ratio(problem.y0.size(), 0.0);
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    if (std::abs(problem.y0[i]) >= delta) ratio[i] = problem.yd[i] / problem.y0[i];
  }
  const Field h(problem.y0.grid(), std::move(ratio));
  const double y0_sup = linf_norm(problem.y0);

  // Shrink the smoothing radius until the mollification error fits in half
  // of the precision budget.
  const double bar = 0.5 * problem.epsilon;
  double accepted_radius = 0.0;
  std::optional<Field> h_r;
  for (double radius = 0.2; radius > 1e-5; radius *= 0.5) {
    Field candidate = mollify(h, radius);
    if (y0_sup * l2_norm(candidate - h) < bar) {
      h_r = std::move(candidate);
      accepted_radius = radius;
      break;
    }
  }
  if (!h_r) {
    report.outcome = SteeringOutcome::exhausted_T;
    report.message =
        "mollifier radius schedule exhausted before reaching the epsilon/2 budget";
    return report;
  }
  std::ostringstream oss;
  oss << "mollified ratio with r=" << accepted_radius
      << "; surrogate bar epsilon/2=" << bar << ". ";
  report.message = oss.str();

  const Field a_r = map(*h_r, [](double v) { return std::log(v); });
  const Field surrogate = pointwise_mul(*h_r, problem.y0);

  TimeSearchSpec spec;
  spec.exponent = &a_r;
  spec.loop_target = &surrogate;
  spec.loop_bar = bar;
  spec.true_target = &problem.yd;
  spec.true_bar = problem.epsilon;
  run_time_search(problem, spec, report);
  return report;
}

SteeringReport steer_fixed_time(const SteeringProblem& problem, double T) {
  problem.validate();
  if (!problem.support.is_full()) {
    throw InvalidArgument("steer_fixed_time: requires a full control support");
  }
  if (!(T > 0.0 && T < problem.T0)) {
    throw InvalidArgument("steer_fixed_time: need 0 < T < T0");
  }
  const NonlinearitySpec& f = problem.nonlinearity;
  if (!f.is_zero() && !f.growth_bound()) {
    throw InvalidArgument(
        "steer_fixed_time: nonlinearity '" + f.name() +
        "' declares no linear-growth constant required by the cancellation control");
  }

  SteeringReport report;
  report.epsilon = problem.epsilon;
  const double delta = problem.resolved_zero_threshold();

  // Case (a) needs the target to be (numerically) an equilibrium candidate:
  // small defect off its zero set and a bounded hold coefficient. A merely
  // nonnegative target is smoothed first (case (b)), which consumes half of
  // the precision budget.
  Field target = problem.yd;
  double eps_work = problem.epsilon;
  HoldControl hold = hold_control(target, delta);
  if (hold.residual > problem.hold_residual_tol || linf_norm(hold.g) > problem.hold_g_max) {
    double yd_min = 0.0;
    for (double v : problem.yd.values()) yd_min = std::min(yd_min, v);
    if (yd_min < -delta) {
      std::ostringstream oss;
      oss << "target is not an equilibrium candidate (hold residual " << hold.residual
          << ", |g|_inf " << linf_norm(hold.g)
          << ") and is not nonnegative, so smoothing does not apply";
      report.outcome = SteeringOutcome::inadmissible;
      report.message = oss.str();
      return report;
    }
    // case (b): replace the target by a strictly positive smooth surrogate
    double accepted_radius = 0.0;
    for (double radius = 0.2; radius > 1e-4; radius *= 0.5) {
      MollifierParams params;
      params.radius = radius;
      params.neg_tolerance = delta;
      Field candidate = mollify(problem.yd, params);
      if (l2_norm(candidate - problem.yd) >= 0.5 * problem.epsilon) continue;
      HoldControl candidate_hold = hold_control(candidate, delta);
      if (candidate_hold.residual > problem.hold_residual_tol ||
          linf_norm(candidate_hold.g) > problem.hold_g_max) {
        continue;
      }
      target = std::move(candidate);
      hold = std::move(candidate_hold);
      accepted_radius = radius;
      break;
    }
    if (accepted_radius == 0.0) {
      report.outcome = SteeringOutcome::exhausted_T;
      report.message =
          "no smoothing radius produced a positive equilibrium target within epsilon/2";
      return report;
    }
    eps_work = 0.5 * problem.epsilon;
    std::ostringstream oss;
    oss << "target smoothed with r=" << accepted_radius << " (l2 gap "
        << l2_norm(target - problem.yd) << "). ";
    report.message += oss.str();
  }

  report.admissibility =
      check_admissibility(problem.y0, target, problem.support, delta, problem.a_max);
  if (!report.admissibility->pass()) {
    report.outcome = SteeringOutcome::inadmissible;
    report.message += "steering hypotheses fail for the (possibly smoothed) target";
    return report;
  }

  // Phase 1: steer the reaction-free system close to the target. The bar
  // absorbs the worst-case amplification e^{T |g|_inf} of the hold phase.
  const double g_linf = linf_norm(hold.g);
  const double eps1 = eps_work * std::exp(-T * g_linf);
  SteeringProblem phase1 = problem;
  phase1.yd = target;
  phase1.nonlinearity = NonlinearitySpec::zero();
  phase1.epsilon = eps1;
  phase1.T0 = T;
  SteeringReport phase1_report = steer_theorem1(phase1);
  report.attempts = phase1_report.attempts;
  if (!phase1_report.success()) {
    report.outcome = phase1_report.outcome;
    report.message += "phase 1 failed: " + phase1_report.message;
    return report;
  }
  const double T1 = phase1_report.chosen_T;
  const Field a1 = log_ratio(problem.y0, target, problem.support, delta, problem.a_max);
  const Field q1 = (1.0 / T1) * a1;

  // Recorded for the manifest; execution below resolves each phase with its
  // own uniform step so T1 << T stays resolvable.
  const ControlSchedule two_phase = two_phase_control(q1, hold.g, T1, T);
  report.control_description = two_phase.describe();

  const double delta_cancel = problem.resolved_delta_E();
  const double dt1 = T1 / problem.steps_per_T;
  const double dt2 = (T - T1) / problem.steps_per_T;

  const ControlSchedule phase_a = ControlSchedule::constant(q1, 0.0, T1);
  const ControlSchedule phase_b = ControlSchedule::constant(hold.g, 0.0, T - T1);
  const NonlinearitySpec zero = NonlinearitySpec::zero();

  const Trajectory phi_a = simulate(problem.y0, phase_a, zero, T1, dt1);
  const Trajectory phi_b = simulate(phi_a.final_state(), phase_b, zero, T - T1, dt2);

  double equivalence_gap = 0.0;
  Field y_final = phi_b.final_state();
  if (!f.is_zero()) {
    const ControlSchedule phase_a_cancel = cancellation_control(phase_a, phi_a, f, delta_cancel);
    const Trajectory y_a = simulate(problem.y0, phase_a_cancel, f, T1, dt1);
    const ControlSchedule phase_b_cancel = cancellation_control(phase_b, phi_b, f, delta_cancel);
    const Trajectory y_b = simulate(y_a.final_state(), phase_b_cancel, f, T - T1, dt2);
    const auto gap = [&](const Trajectory& y, const Trajectory& phi) {
      double worst = 0.0;
      for (std::size_t k = 0; k < y.states.size(); ++k) {
        const double rel = l2_norm(y.states[k] - phi.states[k]) /
                           std::max(1.0, l2_norm(phi.states[k]));
        worst = std::max(worst, rel);
      }
      return worst;
    };
    equivalence_gap = std::max(gap(y_a, phi_a), gap(y_b, phi_b));
    y_final = y_b.final_state();
    record_run(y_b, problem.y0, report);
  } else {
    record_run(phi_b, problem.y0, report);
  }

  report.final_error = l2_norm(y_final - problem.yd);
  report.attempts.push_back({T, dt2, report.final_error});
  report.chosen_T = T;
  report.outcome = report.final_error < problem.epsilon ? SteeringOutcome::success
                                                        : SteeringOutcome::exhausted_T;
  {
    std::ostringstream oss;
    oss << "phase 1 reached the target at T1=" << T1 << " (bar " << eps1
        << "); hold residual " << hold.residual << ", |g|_inf " << g_linf
        << "; cancellation equivalence gap " << equivalence_gap << ".";
    report.message += oss.str();
  }
  fit_loglog(report.attempts, report);
  return report;
}

int default_bernstein_degree(double T, double epsilon) {
  if (!(T > 0.0) || !(epsilon > 0.0) || epsilon >= 1.0) return 1;
  const double n = std::ceil(4.0 / (T * T) * std::log(1.0 / epsilon));
  return static_cast<int>(std::min(n, 1e4));
}

BernsteinDemoReport bernstein_pipeline_demo(const SteeringProblem& problem, double T,
                                            int degree) {
  problem.validate();
  if (!(T > 0.0)) throw InvalidArgument("bernstein_pipeline_demo: T must be positive");
  if (degree < 1) throw InvalidArgument("bernstein_pipeline_demo: degree must be >= 1");

  const double delta = problem.resolved_zero_threshold();
  const Field a = log_ratio(problem.y0, problem.yd, problem.support, delta, problem.a_max);
  const double dt = T / problem.steps_per_T;
  const ControlSchedule control = static_control(a, T);
  const NonlinearitySpec& f = problem.nonlinearity;

  const Trajectory traj = simulate(problem.y0, control, f, T, dt);
  const std::size_t K = traj.step_count();

  // Forcing samples at the k/n fractions of the run, snapped to solver steps.
  std::vector<Field> samples;
  samples.reserve(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    const double t_frac = static_cast<double>(k) / degree * T;
    const auto step = static_cast<std::size_t>(
        std::min<long>(static_cast<long>(K), std::lround(t_frac / dt)));
    samples.push_back(f(traj.times[step], traj.states[step]));
  }
  const BernsteinOperator<Field> forcing_op(std::move(samples));

  NonlinearitySpec forcing(
      "bernstein-forcing",
      [&forcing_op, T](double t, const Field&) {
        return forcing_op.evaluate(std::clamp(t / T, 0.0, 1.0));
      },
      0.0);
  const Trajectory aux = simulate(problem.y0, control, forcing, T, dt);

  BernsteinDemoReport out;
  out.degree = degree;
  out.T = T;
  out.dt = dt;
  out.a_linf = linf_norm(a);
  for (std::size_t k = 0; k <= K; ++k) {
    out.sup_state_gap = std::max(out.sup_state_gap,
                                 l2_norm(traj.states[k] - aux.states[k]));
    const Field fn = forcing_op.evaluate(std::clamp(traj.times[k] / T, 0.0, 1.0));
    const Field fk = f(traj.times[k], traj.states[k]);
    out.sup_forcing_gap = std::max(out.sup_forcing_gap, l2_norm(fn - fk));
  }
  out.gronwall_bound = std::exp(out.a_linf) * T * out.sup_forcing_gap;

  // Defect of the exponential variation-of-constants form of the auxiliary
  // orbit, with a left-endpoint sum over solver steps.
  Field acc = exp_scale_mul(a, 1.0, problem.y0);
  std::vector<double>& av = acc.mutable_values();
  for (std::size_t k = 0; k < K; ++k) {
    const double w = (T - aux.times[k]) / T;
    const Field lap = apply_laplacian(aux.states[k]);
    const Field fn = forcing_op.evaluate(std::clamp(aux.times[k] / T, 0.0, 1.0));
    for (std::size_t i = 0; i < av.size(); ++i) {
      av[i] += dt * std::exp(w * a[i]) * (lap[i] + fn[i]);
    }
  }
  out.exp_identity_residual = l2_norm(aux.final_state() - acc);
  return out;
}

ConvergenceTable convergence_study(const SteeringProblem& problem,
                                   const std::vector<double>& T_list) {
  problem.validate();
  if (T_list.size() < 3) {
    throw InvalidArgument("convergence_study: need at least 3 time values");
  }
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    if (!(T_list[i] > 0.0) || T_list[i] < problem.T_min) {
      throw InvalidArgument("convergence_study: times must be positive and >= T_min");
    }
    if (i > 0 && !(T_list[i] < T_list[i - 1])) {
      throw InvalidArgument("convergence_study: times must be strictly decreasing");
    }
  }

  const double delta = problem.resolved_zero_threshold();
  const Field a = log_ratio(problem.y0, problem.yd, problem.support, delta, problem.a_max);

  ConvergenceTable table;
  std::vector<double> lx, ly;
  for (double T : T_list) {
    const double dt = T / problem.steps_per_T;
    const Trajectory traj =
        simulate(problem.y0, static_control(a, T), problem.nonlinearity, T, dt);
    ConvergenceRow row;
    row.T = T;
    row.dt = dt;
    row.error = l2_norm(traj.final_state() - problem.yd);
    if (row.error > 0.0) {
      lx.push_back(std::log(T));
      ly.push_back(std::log(row.error));
    }
    if (lx.size() >= 2) {
      double mx = 0.0, my = 0.0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
      }
      mx /= static_cast<double>(lx.size());
      my /= static_cast<double>(lx.size());
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
      }
      row.slope_running = num / den;
    } else {
      row.slope_running = std::numeric_limits<double>::quiet_NaN();
    }
    table.rows.push_back(row);
  }
  if (!table.rows.empty() && !std::isnan(table.rows.back().slope_running)) {
    table.slope = table.rows.back().slope_running;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    table.intercept = my - table.slope * mx;
    table.rate_constant = std::exp(table.intercept);
  }
  return table;
}

ResolventReport resolvent_prefilter(const SteeringProblem& problem,
                                    const std::vector<double>& lambda_list) {
  problem.validate();
  if (lambda_list.empty()) {
    throw InvalidArgument("resolvent_prefilter: empty lambda list");
  }
  for (std::size_t i = 0; i < lambda_list.size(); ++i) {
    if (!(lambda_list[i] > 0.0)) {
      throw InvalidArgument("resolvent_prefilter: lambda must be positive");
    }
    if (i > 0 && !(lambda_list[i] > lambda_list[i - 1])) {
      throw InvalidArgument("resolvent_prefilter: lambda list must be increasing");
    }
  }

  const double delta = problem.resolved_zero_threshold();
  const Field a = log_ratio(problem.y0, problem.yd, problem.support, delta, problem.a_max);
  const double T = problem.T0 * problem.shrink;
  const double dt = T / problem.steps_per_T;
  const ControlSchedule control = static_control(a, T);

  const Trajectory base = simulate(problem.y0, control, problem.nonlinearity, T, dt);
  const double gronwall =
      std::exp(linf_norm(a) + problem.nonlinearity.lipschitz() * T);

  ResolventReport report;
  report.T = T;
  for (double lambda : lambda_list) {
    const Field smoothed = resolvent_smooth(problem.y0, lambda);
    const Trajectory filtered = simulate(smoothed, control, problem.nonlinearity, T, dt);
    ResolventRow row;
    row.lambda = lambda;
    row.initial_gap = l2_norm(smoothed - problem.y0);
    row.trajectory_gap = l2_norm(filtered.final_state() - base.final_state());
    row.gronwall_constant = gronwall;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace bisteer
