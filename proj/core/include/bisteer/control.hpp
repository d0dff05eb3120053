#pragma once

#include <cstddef>
#include <vector>

#include "bisteer/grid.hpp"
#include "bisteer/nonlinearity.hpp"
#include "bisteer/schedule.hpp"
#include "bisteer/trajectory.hpp"

namespace bisteer {

struct ConditionReport {
  bool pass = true;
  std::vector<std::size_t> violations;  // node indices
};

/// Nodewise evaluation of the steering hypotheses for a pair (y0, yd) on
/// the support O. A node counts as zero when |value| < delta.
///  - support:    {y0 != yd} lies inside O
///  - sign:       y0 * yd >= 0 on O (both nonzero with opposite signs fails)
///  - zero_match: y0 = 0 iff yd = 0 on O
///  - bounded:    |ln(yd/y0)| <= a_max on O where both are nonzero
struct AdmissibilityReport {
  ConditionReport support;
  ConditionReport sign;
  ConditionReport zero_match;
  ConditionReport bounded;
  double delta = 0.0;
  double a_max = 0.0;

  bool pass() const {
    return support.pass && sign.pass && zero_match.pass && bounded.pass;
  }
};

/// Thrown when control synthesis is attempted on an inadmissible pair.
class SynthesisError : public Error {
public:
  SynthesisError(const std::string& msg, AdmissibilityReport report)
      : Error(msg), report_(std::move(report)) {}
  const AdmissibilityReport& report() const { return report_; }

private:
  AdmissibilityReport report_;
};

AdmissibilityReport check_admissibility(const Field& y0, const Field& yd,
                                        const SupportMask& support, double delta,
                                        double a_max);

/// The log-ratio exponent: a(x) = ln(yd(x)/y0(x)) at nodes of O with
/// |y0| >= delta, 0 elsewhere. Requires admissibility; throws SynthesisError
/// carrying the report otherwise. On the synthesis set, e^a * y0 reproduces
/// yd to rounding.
Field log_ratio(const Field& y0, const Field& yd, const SupportMask& support,
                double delta, double a_max);

/// Single-piece schedule [0, T] with the spatial field a/T.
ControlSchedule static_control(const Field& a, double T);

struct HoldControl {
  Field g;                        // -L yd / yd on {|yd| >= delta}, 0 elsewhere
  double residual = 0.0;          // full-domain l2 of (L yd + g yd)
  double support_residual = 0.0;  // same restricted to {|yd| >= delta}
};

/// Static coefficient that makes yd an equilibrium of y_t = L y + g y.
/// The support residual vanishes by construction; the full-domain residual
/// measures how far yd is from satisfying L yd = 0 on its own zero set.
HoldControl hold_control(const Field& yd, double delta);

/// Two-piece schedule q1 on [0, T1), g on [T1, T].
ControlSchedule two_phase_control(const Field& q1, const Field& g, double T1, double T);

/// Augments q with the reaction-cancelling feedback built from the reference
/// orbit phi: v(x,t) = q(x,t) - f(t,phi)/phi on {|phi| > delta_E}. Requires
/// f to declare a linear-growth constant (which bounds the added term);
/// returns q unchanged for the zero nonlinearity.
ControlSchedule cancellation_control(const ControlSchedule& q, const Trajectory& phi,
                                     const NonlinearitySpec& f, double delta_E);

}  // namespace bisteer
