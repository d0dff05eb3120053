#include "bisteer/schedule.hpp"

#include <cmath>
#include <sstream>

namespace bisteer {

ControlSchedule::ControlSchedule(std::vector<ControlPiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ScheduleError("control schedule has no pieces");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const ControlPiece& p = pieces_[i];
    if (!(p.t_start < p.t_end)) {
      throw ScheduleError("control piece has t_start >= t_end");
    }
    if (!std::isfinite(linf_norm(p.value))) {
      throw ScheduleError("control piece value is not bounded");
    }
    if (i > 0) {
      require_same_grid(pieces_[i - 1].value, p.value);
      if (std::abs(pieces_[i - 1].t_end - p.t_start) > 1e-12 * std::max(1.0, p.t_end)) {
        throw ScheduleError("control pieces are not contiguous");
      }
    }
  }
}

ControlSchedule ControlSchedule::constant(Field value, double t_start, double t_end) {
  std::vector<ControlPiece> pieces;
  pieces.push_back(ControlPiece{t_start, t_end, std::move(value)});
  return ControlSchedule(std::move(pieces));
}

const Field& ControlSchedule::value_at(double t) const {
  for (const ControlPiece& p : pieces_) {
    if (t >= p.t_start && t < p.t_end) return p.value;
  }
  // closed right end of the final piece
  const ControlPiece& last = pieces_.back();
  if (t >= last.t_start && t <= last.t_end) return last.value;
  std::ostringstream oss;
  oss << "control schedule does not cover t=" << t << " (span [" << t_begin() << ", "
      << t_end() << "])";
  throw ScheduleError(oss.str());
}

bool ControlSchedule::covers(double t0, double t1) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(t1));
  return t_begin() <= t0 + tol && t_end() >= t1 - tol;
}

ControlSchedule ControlSchedule::with_cancellation(CancellationTerm term) const {
  if (!term.reference || term.reference->states.empty()) {
    throw ScheduleError("cancellation term has no reference trajectory");
  }
  ControlSchedule out = *this;
  out.cancellation_ = std::move(term);
  return out;
}

double ControlSchedule::linf() const {
  double m = 0.0;
  for (const ControlPiece& p : pieces_) m = std::max(m, linf_norm(p.value));
  return m;
}

std::string ControlSchedule::describe() const {
  std::ostringstream oss;
  oss << pieces_.size() << " piece(s) over [" << t_begin() << ", " << t_end() << "]";
  for (const ControlPiece& p : pieces_) {
    oss << "; [" << p.t_start << "," << p.t_end << ") |v|_inf=" << linf_norm(p.value);
  }
  if (cancellation_) {
    oss << "; cancellation of '" << cancellation_->nonlinearity.name()
        << "' with delta_E=" << cancellation_->delta_E;
  }
  return oss.str();
}

Field cancellation_field(const NonlinearitySpec& f, double t, const Field& phi,
                         double delta_E) {
  const Field fphi = f(t, phi);
  std::vector<double> c(phi.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(phi[i]) > delta_E) c[i] = -fphi[i] / phi[i];
  }
  return Field(phi.grid(), std::move(c));
}

}  // namespace bisteer
