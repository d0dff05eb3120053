#pragma once

#include <memory>

#include "bisteer/grid.hpp"
#include "bisteer/nonlinearity.hpp"
#include "bisteer/schedule.hpp"
#include "bisteer/trajectory.hpp"

namespace bisteer {

/// One Crank-Nicolson step of the heat equation for a fixed (grid, dt):
/// solve (I - dt/2 L) u+ = (I + dt/2 L) u with the discrete Dirichlet
/// Laplacian L. The step is an L2 contraction. 1D systems are solved by
/// tridiagonal elimination; 2D systems by a sparse Cholesky factorization
/// computed once at construction and reused for every step.
class HeatStepper {
public:
  HeatStepper(SpatialGrid grid, double dt);
  ~HeatStepper();
  HeatStepper(HeatStepper&&) noexcept;
  HeatStepper& operator=(HeatStepper&&) noexcept;
  HeatStepper(const HeatStepper&) = delete;
  HeatStepper& operator=(const HeatStepper&) = delete;

  Field step(const Field& u) const;

  double dt() const { return dt_; }
  const SpatialGrid& grid() const { return grid_; }

private:
  struct Impl;
  SpatialGrid grid_;
  double dt_ = 0.0;
  std::unique_ptr<Impl> impl_;
};

/// Convenience one-shot Crank-Nicolson step.
Field step_heat(const Field& u, double dt);

/// `steps` repeated Crank-Nicolson steps (the discrete semigroup action).
Field apply_heat_semigroup(const Field& u, double dt, long steps);

/// Resolvent smoothing: solve (lambda I - L) z = lambda u. Satisfies
/// l2_norm(z) <= l2_norm(u) and z -> u as lambda -> infinity.
Field resolvent_smooth(const Field& u, double lambda);

/// Integrates y_t = L y + v(x,t) y + f(t, y) from y0 over [0, T] with step
/// dt by Strang splitting: exact pointwise exponential half-step for the
/// multiplicative control, a Crank-Nicolson diffusion step with the reaction
/// added explicitly at the interval midpoint, then the second exponential
/// half-step.
///
/// When the schedule carries a cancellation term, its reference state is
/// advanced through the identical substeps so the feedback quotient is
/// evaluated at the same point of the splitting as the reaction it removes;
/// the reference must be sampled at this run's dt.
///
/// Throws ScheduleError on coverage/step mismatches and BlowUpError (with
/// the step index) if a non-finite value appears.
Trajectory simulate(const Field& y0, const ControlSchedule& control,
                    const NonlinearitySpec& f, double T, double dt);

/// Defect of the trajectory against the discrete variation-of-constants
/// form: l2 of
///   y(T) - [ S^K y0 + sum_k dt * S^{K-k} (v(t_k) y(t_k) + f(t_k, y(t_k))) ]
/// with S one Crank-Nicolson step and a left-endpoint sum over solver steps.
double vcf_residual(const Trajectory& traj, const ControlSchedule& control,
                    const NonlinearitySpec& f);

/// Defect of a static-control run against the steering identity: l2 of
///   (y(T) - y_target) - sum_k dt * e^{((T-t_k)/T) a} (L y(t_k) + f(t_k, y(t_k)))
/// with a left-endpoint sum over solver steps.
double steering_identity_residual(const Trajectory& traj, const Field& a,
                                  const NonlinearitySpec& f, const Field& y_target);

}  // namespace bisteer
