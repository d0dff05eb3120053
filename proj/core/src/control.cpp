#include "bisteer/control.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "bisteer/pde.hpp"

namespace bisteer {

AdmissibilityReport check_admissibility(const Field& y0, const Field& yd,
                                        const SupportMask& support, double delta,
                                        double a_max) {
  require_same_grid(y0, yd);
  if (!(y0.grid() == support.grid())) {
    throw InvalidArgument("check_admissibility: mask grid mismatch");
  }
  if (!(delta > 0.0)) throw InvalidArgument("check_admissibility: delta must be positive");
  if (!(a_max > 0.0)) throw InvalidArgument("check_admissibility: a_max must be positive");

  AdmissibilityReport report;
  report.delta = delta;
  report.a_max = a_max;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const bool in_support = support[i];
    const bool z0 = std::abs(y0[i]) < delta;
    const bool zd = std::abs(yd[i]) < delta;
    if (!in_support && std::abs(y0[i] - yd[i]) > delta) {
      report.support.violations.push_back(i);
    }
    if (in_support) {
      if (!z0 && !zd && y0[i] * yd[i] < 0.0) {
        report.sign.violations.push_back(i);
      }
      if (z0 != zd) {
        report.zero_match.violations.push_back(i);
      }
      if (!z0 && !zd && std::abs(std::log(yd[i] / y0[i])) > a_max) {
        report.bounded.violations.push_back(i);
      }
    }
  }
  report.support.pass = report.support.violations.empty();
  report.sign.pass = report.sign.violations.empty();
  report.zero_match.pass = report.zero_match.violations.empty();
  report.bounded.pass = report.bounded.violations.empty();
  return report;
}

Field log_ratio(const Field& y0, const Field& yd, const SupportMask& support,
                double delta, double a_max) {
  AdmissibilityReport report = check_admissibility(y0, yd, support, delta, a_max);
  if (!report.pass()) {
    throw SynthesisError("log_ratio: admissibility hypotheses fail", std::move(report));
  }
  std::vector<double> a(y0.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (support[i] && std::abs(y0[i]) >= delta) {
      a[i] = std::log(yd[i] / y0[i]);
    }
  }
  return Field(y0.grid(), std::move(a));
}

ControlSchedule static_control(const Field& a, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw InvalidArgument("static_control: T must be positive");
  }
  return ControlSchedule::constant((1.0 / T) * a, 0.0, T);
}

HoldControl hold_control(const Field& yd, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("hold_control: delta must be positive");
  const Field lap = apply_laplacian(yd);
  std::vector<double> g(yd.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(yd[i]) >= delta) g[i] = -lap[i] / yd[i];
  }
  HoldControl out{Field(yd.grid(), std::move(g)), 0.0, 0.0};

  const double h = yd.grid().spacing();
  const double cell = yd.grid().dimension == 1 ? h : h * h;
  double full = 0.0;
  double on_support = 0.0;
  for (std::size_t i = 0; i < yd.size(); ++i) {
    const double r = lap[i] + out.g[i] * yd[i];
    full += r * r;
    if (std::abs(yd[i]) >= delta) on_support += r * r;
  }
  out.residual = std::sqrt(cell * full);
  out.support_residual = std::sqrt(cell * on_support);
  return out;
}

ControlSchedule two_phase_control(const Field& q1, const Field& g, double T1, double T) {
  if (!(T1 > 0.0 && T1 < T)) {
    throw InvalidArgument("two_phase_control: need 0 < T1 < T");
  }
  require_same_grid(q1, g);
  std::vector<ControlPiece> pieces;
  pieces.push_back(ControlPiece{0.0, T1, q1});
  pieces.push_back(ControlPiece{T1, T, g});
  return ControlSchedule(std::move(pieces));
}

ControlSchedule cancellation_control(const ControlSchedule& q, const Trajectory& phi,
                                     const NonlinearitySpec& f, double delta_E) {
  if (f.is_zero()) return q;
  if (!f.growth_bound()) {
    throw InvalidArgument(
        "cancellation_control: nonlinearity '" + f.name() +
        "' declares no linear-growth constant; the feedback quotient is unbounded");
  }
  if (phi.states.empty()) {
    throw InvalidArgument("cancellation_control: empty reference trajectory");
  }
  if (!(delta_E > 0.0)) {
    throw InvalidArgument("cancellation_control: delta_E must be positive");
  }
  CancellationTerm term{std::make_shared<Trajectory>(phi), delta_E, *f.growth_bound(), f};
  return q.with_cancellation(std::move(term));
}

}  // namespace bisteer
