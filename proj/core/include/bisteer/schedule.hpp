#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bisteer/grid.hpp"
#include "bisteer/nonlinearity.hpp"
#include "bisteer/trajectory.hpp"

namespace bisteer {

/// One constant-in-time slab of a piecewise control: v(x,t) = value(x) for
/// t in [t_start, t_end).
struct ControlPiece {
  double t_start = 0.0;
  double t_end = 0.0;
  Field value;
};

/// Trajectory-indexed feedback term that removes the reaction along a
/// reference orbit phi:
///   v_cancel(x,t) = -f(t, phi(t))(x) / phi(t)(x)  where |phi(t)(x)| > delta_E,
///   0 elsewhere.
/// The reference must be sampled at the solver step size of the run that
/// consumes it. growth_bound is the constant C with |f(t,y)(x)| <= C|y(x)|,
/// which bounds the term's pointwise magnitude.
struct CancellationTerm {
  std::shared_ptr<const Trajectory> reference;
  double delta_E = 0.0;
  double growth_bound = 0.0;
  NonlinearitySpec nonlinearity;
};

/// Piecewise-in-time spatial control v(x,t). Pieces partition the schedule
/// span contiguously; every piece has finite sup norm. The final piece is
/// closed on the right so value_at(t_end) is defined.
class ControlSchedule {
public:
  explicit ControlSchedule(std::vector<ControlPiece> pieces);

  static ControlSchedule constant(Field value, double t_start, double t_end);

  const Field& value_at(double t) const;
  double t_begin() const { return pieces_.front().t_start; }
  double t_end() const { return pieces_.back().t_end; }
  bool covers(double t0, double t1) const;

  const std::vector<ControlPiece>& pieces() const { return pieces_; }
  const std::optional<CancellationTerm>& cancellation() const { return cancellation_; }

  ControlSchedule with_cancellation(CancellationTerm term) const;

  /// Sup norm over all pieces (the L-infinity budget of the control).
  double linf() const;

  std::string describe() const;

private:
  std::vector<ControlPiece> pieces_;
  std::optional<CancellationTerm> cancellation_;
};

/// The cancellation field at one time point, evaluated on the reference
/// state phi: c_i = -f(t, phi)_i / phi_i where |phi_i| > delta_E, else 0.
Field cancellation_field(const NonlinearitySpec& f, double t, const Field& phi,
                         double delta_E);

}  // namespace bisteer
