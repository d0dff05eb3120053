#pragma once

#include <concepts>
#include <vector>

#include "bisteer/errors.hpp"
#include "bisteer/grid.hpp"

namespace bisteer {

/// Basis values b_k(t) = C(n,k) t^k (1-t)^{n-k}, k = 0..n, computed by a
/// ratio recurrence anchored at the mode of the binomial weights. Factorial
/// free and underflow safe for large n; weights far from the mode flush to
/// zero harmlessly. Throws for t outside [0, 1] or n < 0.
std::vector<double> bernstein_basis(int n, double t);

namespace detail {

template <class S>
concept BernsteinSample = requires(const S& a, const S& b, double w) {
  { w * a } -> std::convertible_to<S>;
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
};

}  // namespace detail

/// Degree-n polynomial approximation built from samples u(k/n), k = 0..n,
/// on the normalized interval [0, 1]. Works for scalar samples and for
/// Field-valued samples alike.
template <detail::BernsteinSample Sample>
class BernsteinOperator {
public:
  explicit BernsteinOperator(std::vector<Sample> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) {
      throw InvalidArgument("BernsteinOperator: need degree n >= 1 (n+1 samples)");
    }
  }

  int degree() const { return static_cast<int>(samples_.size()) - 1; }
  const std::vector<Sample>& samples() const { return samples_; }

  /// Convex combination sum b_k(t) u(k/n); endpoints interpolate exactly.
  Sample evaluate(double t) const {
    const int n = degree();
    if (t == 0.0) return samples_.front();
    if (t == 1.0) return samples_.back();
    const std::vector<double> w = bernstein_basis(n, t);
    double wsum = 0.0;
    for (double x : w) wsum += x;
    Sample acc = w[0] * samples_[0];
    for (int k = 1; k <= n; ++k) acc = acc + w[static_cast<std::size_t>(k)] * samples_[static_cast<std::size_t>(k)];
    return (1.0 / wsum) * acc;
  }

  /// Derivative in t: n * sum_k C(n-1,k) t^k (1-t)^{n-1-k} (u((k+1)/n) - u(k/n)).
  Sample derivative(double t) const {
    const int n = degree();
    const double dn = static_cast<double>(n);
    if (n == 1 || t == 0.0) return dn * (samples_[1] - samples_[0]);
    if (t == 1.0) {
      return dn * (samples_[static_cast<std::size_t>(n)] - samples_[static_cast<std::size_t>(n - 1)]);
    }
    const std::vector<double> w = bernstein_basis(n - 1, t);
    double wsum = 0.0;
    for (double x : w) wsum += x;
    Sample acc = w[0] * (samples_[1] - samples_[0]);
    for (int k = 1; k <= n - 1; ++k) {
      acc = acc + w[static_cast<std::size_t>(k)] *
                      (samples_[static_cast<std::size_t>(k + 1)] - samples_[static_cast<std::size_t>(k)]);
    }
    return (dn / wsum) * acc;
  }

private:
  std::vector<Sample> samples_;
};

/// Tail estimate M / (2 eta^2 n) for the basis mass at distance >= eta from t.
double bernstein_tail_bound(double sup_norm, double eta, int n);

/// Full uniform bound for an l-Lipschitz function: l*eta + M/(2 eta^2 n).
double bernstein_total_bound(double lipschitz, double sup_norm, double eta, int n);

}  // namespace bisteer
