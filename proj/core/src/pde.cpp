#include "bisteer/pde.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <sstream>
#include <vector>

namespace bisteer {

namespace {

// (I + dt/2 L) u evaluated by stencil, zero Dirichlet closure.
std::vector<double> cn_rhs(const SpatialGrid& g, double dt,
                           std::span<const double> v) {
  const double tau = 0.5 * dt / (g.spacing() * g.spacing());
  std::vector<double> rhs(v.size());
  if (g.dimension == 1) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i > 0 ? v[i - 1] : 0.0;
      const double right = i + 1 < n ? v[i + 1] : 0.0;
      rhs[i] = v[i] + tau * (left - 2.0 * v[i] + right);
    }
  } else {
    const auto n = static_cast<std::size_t>(g.nodes_per_axis);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = i * n + j;
        const double w = i > 0 ? v[idx - n] : 0.0;
        const double e = i + 1 < n ? v[idx + n] : 0.0;
        const double s = j > 0 ? v[idx - 1] : 0.0;
        const double t = j + 1 < n ? v[idx + 1] : 0.0;
        rhs[idx] = v[idx] + tau * (w + e + s + t - 4.0 * v[idx]);
      }
    }
  }
  return rhs;
}

// SPD system (shift I - L) with shift > 0, assembled once.
Eigen::SparseMatrix<double> shifted_operator(const SpatialGrid& g, double shift,
                                             double scale) {
  // shift I + scale * (-L); -L has diagonal 2d/h^2 and off-diagonals -1/h^2.
  const auto n = static_cast<int>(g.node_count());
  const double h2inv = 1.0 / (g.spacing() * g.spacing());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 5);
  if (g.dimension == 1) {
    for (int i = 0; i < n; ++i) {
      trip.emplace_back(i, i, shift + scale * 2.0 * h2inv);
      if (i > 0) trip.emplace_back(i, i - 1, -scale * h2inv);
      if (i + 1 < n) trip.emplace_back(i, i + 1, -scale * h2inv);
    }
  } else {
    const int na = g.nodes_per_axis;
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < na; ++j) {
        const int idx = i * na + j;
        trip.emplace_back(idx, idx, shift + scale * 4.0 * h2inv);
        if (i > 0) trip.emplace_back(idx, idx - na, -scale * h2inv);
        if (i + 1 < na) trip.emplace_back(idx, idx + na, -scale * h2inv);
        if (j > 0) trip.emplace_back(idx, idx - 1, -scale * h2inv);
        if (j + 1 < na) trip.emplace_back(idx, idx + 1, -scale * h2inv);
      }
    }
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

// Constant-coefficient symmetric tridiagonal solver with precomputed
// elimination pass: (diag, off) fixed, many right-hand sides.
class Tridiag {
public:
  Tridiag(std::size_t n, double diag, double off) : off_(off), cprime_(n), denom_(n) {
    denom_[0] = diag;
    cprime_[0] = off / diag;
    for (std::size_t i = 1; i < n; ++i) {
      denom_[i] = diag - off * cprime_[i - 1];
      cprime_[i] = off / denom_[i];
    }
  }

  void solve(std::vector<double>& d) const {
    const std::size_t n = d.size();
    d[0] /= denom_[0];
    for (std::size_t i = 1; i < n; ++i) {
      d[i] = (d[i] - off_ * d[i - 1]) / denom_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      d[i] -= cprime_[i] * d[i + 1];
    }
  }

private:
  double off_;
  std::vector<double> cprime_;
  std::vector<double> denom_;
};

}  // namespace

struct HeatStepper::Impl {
  std::unique_ptr<Tridiag> tri;                                   // 1D path
  std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> llt;  // 2D path
};

HeatStepper::HeatStepper(SpatialGrid grid, double dt)
    : grid_(grid), dt_(dt), impl_(std::make_unique<Impl>()) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("HeatStepper: dt must be positive");
  }
  const double tau = 0.5 * dt / (grid.spacing() * grid.spacing());
  if (grid.dimension == 1) {
    impl_->tri = std::make_unique<Tridiag>(grid.node_count(), 1.0 + 2.0 * tau, -tau);
  } else {
    impl_->llt = std::make_unique<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
    impl_->llt->compute(shifted_operator(grid, 1.0, 0.5 * dt));
    if (impl_->llt->info() != Eigen::Success) {
      throw Error("HeatStepper: Cholesky factorization failed (internal fault)");
    }
  }
}

HeatStepper::~HeatStepper() = default;
HeatStepper::HeatStepper(HeatStepper&&) noexcept = default;
HeatStepper& HeatStepper::operator=(HeatStepper&&) noexcept = default;

Field HeatStepper::step(const Field& u) const {
  if (!(u.grid() == grid_)) throw InvalidArgument("HeatStepper: grid mismatch");
  std::vector<double> rhs = cn_rhs(grid_, dt_, u.values());
  if (grid_.dimension == 1) {
    impl_->tri->solve(rhs);
    return Field(grid_, std::move(rhs));
  }
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<long>(rhs.size()));
  Eigen::VectorXd x = impl_->llt->solve(b);
  if (impl_->llt->info() != Eigen::Success) {
    throw Error("HeatStepper: linear solve failed (internal fault)");
  }
  return Field(grid_, std::vector<double>(x.data(), x.data() + x.size()));
}

Field step_heat(const Field& u, double dt) {
  return HeatStepper(u.grid(), dt).step(u);
}

Field apply_heat_semigroup(const Field& u, double dt, long steps) {
  if (steps < 0) throw InvalidArgument("apply_heat_semigroup: negative step count");
  HeatStepper stepper(u.grid(), dt);
  Field y = u;
  for (long k = 0; k < steps; ++k) y = stepper.step(y);
  return y;
}

Field resolvent_smooth(const Field& u, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("resolvent_smooth: lambda must be positive");
  }
  const SpatialGrid& g = u.grid();
  const double h2inv = 1.0 / (g.spacing() * g.spacing());
  std::vector<double> rhs(u.values().begin(), u.values().end());
  for (double& v : rhs) v *= lambda;
  if (g.dimension == 1) {
    Tridiag tri(g.node_count(), lambda + 2.0 * h2inv, -h2inv);
    tri.solve(rhs);
    return Field(g, std::move(rhs));
  }
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  llt.compute(shifted_operator(g, lambda, 1.0));
  if (llt.info() != Eigen::Success) {
    throw Error("resolvent_smooth: factorization failed (internal fault)");
  }
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<long>(rhs.size()));
  Eigen::VectorXd x = llt.solve(b);
  return Field(g, std::vector<double>(x.data(), x.data() + x.size()));
}

namespace {

// Per-piece cache of the exponential half-step factors e^{(dt/2) v}.
class HalfStepExponential {
public:
  HalfStepExponential(double dt) : half_dt_(0.5 * dt) {}

  // Multiplies u by e^{(dt/2) v} pointwise, reusing the factor vector while
  // the schedule keeps returning the same piece.
  Field apply(const Field& v, const Field& u) {
    if (&v != cached_piece_) {
      factors_.resize(v.size());
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        factors_[i] = std::exp(half_dt_ * v[i]);
      }
      cached_piece_ = &v;
    }
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = factors_[i] * u[i];
    return Field(u.grid(), std::move(out));
  }

private:
  double half_dt_;
  const Field* cached_piece_ = nullptr;
  std::vector<double> factors_;
};

}  // namespace

Trajectory simulate(const Field& y0, const ControlSchedule& control,
                    const NonlinearitySpec& f, double T, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("simulate: dt must be positive");
  if (T < dt) throw ScheduleError("simulate: horizon T is shorter than one step dt");
  if (!control.covers(0.0, T)) {
    throw ScheduleError("simulate: control schedule does not cover [0, T]");
  }
  const long steps = std::lround(T / dt);
  if (steps < 1 || std::abs(static_cast<double>(steps) * dt - T) > 0.5 * dt) {
    throw ScheduleError("simulate: T is not an integral number of steps");
  }

  const SpatialGrid grid = y0.grid();
  const CancellationTerm* cancel = control.cancellation() ? &*control.cancellation() : nullptr;
  if (cancel) {
    const Trajectory& ref = *cancel->reference;
    if (std::abs(ref.dt - dt) > 1e-12 * dt ||
        ref.step_count() < static_cast<std::size_t>(steps)) {
      throw ScheduleError("simulate: cancellation reference is not sampled at this run's dt");
    }
  }

  HeatStepper stepper(grid, dt);
  HalfStepExponential expo(dt);

  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  Field y = y0;
  for (long k = 0; k < steps; ++k) {
    const double t0 = static_cast<double>(k) * dt;
    const double t_mid = t0 + 0.5 * dt;

    const Field& v1 = control.value_at(t0 + 0.25 * dt);
    Field y1 = expo.apply(v1, y);

    Field y2 = stepper.step(y1);
    if (!f.is_zero() || cancel) {
      Field reaction = f(t_mid, y1);
      if (cancel) {
        const Field& phi_k = cancel->reference->at_step(static_cast<std::size_t>(k));
        const Field phi1 = expo.apply(v1, phi_k);
        const Field c = cancellation_field(cancel->nonlinearity, t_mid, phi1,
                                           cancel->delta_E);
        std::vector<double>& rv = reaction.mutable_values();
        for (std::size_t i = 0; i < rv.size(); ++i) rv[i] += c[i] * y1[i];
      }
      std::vector<double>& yv = y2.mutable_values();
      for (std::size_t i = 0; i < yv.size(); ++i) yv[i] += dt * reaction[i];
    }

    const Field& v2 = control.value_at(t0 + 0.75 * dt);
    if (!all_finite(y2.values())) {
      std::ostringstream oss;
      oss << "simulate: non-finite state at step " << (k + 1) << " (t=" << t0 + dt << ")";
      throw BlowUpError(oss.str(), k + 1);
    }
    y = expo.apply(v2, y2);
    if (!all_finite(y.values())) {
      std::ostringstream oss;
      oss << "simulate: non-finite state at step " << (k + 1) << " (t=" << t0 + dt << ")";
      throw BlowUpError(oss.str(), k + 1);
    }

    traj.times.push_back(static_cast<double>(k + 1) * dt);
    traj.states.push_back(y);
  }
  return traj;
}

double vcf_residual(const Trajectory& traj, const ControlSchedule& control,
                    const NonlinearitySpec& f) {
  if (traj.states.empty()) throw InvalidArgument("vcf_residual: empty trajectory");
  const std::size_t K = traj.step_count();
  const double dt = traj.dt;
  const SpatialGrid grid = traj.states.front().grid();
  HeatStepper stepper(grid, dt);

  // R accumulates sum_k S^{K-k} dt G_k via a right-to-left Horner pass.
  Field R = Field::zeros(grid);
  for (std::size_t k = K; k-- > 0;) {
    const double t_k = traj.times[k];
    const Field& y_k = traj.states[k];
    Field G = pointwise_mul(control.value_at(t_k), y_k);
    if (!f.is_zero()) G = G + f(t_k, y_k);
    R = stepper.step(R + dt * G);
  }

  Field semigroup = traj.states.front();
  for (std::size_t k = 0; k < K; ++k) semigroup = stepper.step(semigroup);

  return l2_norm(traj.final_state() - (semigroup + R));
}

double steering_identity_residual(const Trajectory& traj, const Field& a,
                                  const NonlinearitySpec& f, const Field& y_target) {
  if (traj.states.empty()) throw InvalidArgument("steering_identity_residual: empty trajectory");
  require_same_grid(traj.states.front(), a);
  require_same_grid(traj.states.front(), y_target);
  const std::size_t K = traj.step_count();
  const double dt = traj.dt;
  const double T = traj.final_time();

  Field acc = Field::zeros(a.grid());
  std::vector<double>& av = acc.mutable_values();
  for (std::size_t k = 0; k < K; ++k) {
    const double t_k = traj.times[k];
    const double w = (T - t_k) / T;
    const Field& y_k = traj.states[k];
    Field G = apply_laplacian(y_k);
    if (!f.is_zero()) G = G + f(t_k, y_k);
    for (std::size_t i = 0; i < av.size(); ++i) {
      av[i] += dt * std::exp(w * a[i]) * G[i];
    }
  }
  return l2_norm((traj.final_state() - y_target) - acc);
}

}  // namespace bisteer
