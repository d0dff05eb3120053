#include "bisteer/bernstein.hpp"

#include <cmath>

namespace bisteer {

std::vector<double> bernstein_basis(int n, double t) {
  if (n < 0) throw InvalidArgument("bernstein_basis: negative degree");
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidArgument("bernstein_basis: t outside [0, 1]");
  }
  std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
  if (n == 0) {
    b[0] = 1.0;
    return b;
  }
  if (t == 0.0) {
    b[0] = 1.0;
    return b;
  }
  if (t == 1.0) {
    b[static_cast<std::size_t>(n)] = 1.0;
    return b;
  }

  // Anchor at the mode k* of the weights, then sweep outwards with the
  // ratio recurrence. Avoids (1-t)^n underflow wiping out the whole basis.
  const int mode = std::min(n, static_cast<int>(t * (n + 1)));
  const double log_bmode = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
                           std::lgamma(n - mode + 1.0) + mode * std::log(t) +
                           (n - mode) * std::log1p(-t);
  b[static_cast<std::size_t>(mode)] = std::exp(log_bmode);

  const double up = t / (1.0 - t);
  for (int k = mode; k < n; ++k) {
    b[static_cast<std::size_t>(k) + 1] =
        b[static_cast<std::size_t>(k)] * (static_cast<double>(n - k) / (k + 1.0)) * up;
  }
  const double down = (1.0 - t) / t;
  for (int k = mode; k > 0; --k) {
    b[static_cast<std::size_t>(k) - 1] =
        b[static_cast<std::size_t>(k)] * (static_cast<double>(k) / (n - k + 1.0)) * down;
  }
  return b;
}

double bernstein_tail_bound(double sup_norm, double eta, int n) {
  if (sup_norm < 0.0) throw InvalidArgument("bernstein_tail_bound: negative sup norm");
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InvalidArgument("bernstein_tail_bound: eta must lie in (0, 1]");
  }
  if (n < 1) throw InvalidArgument("bernstein_tail_bound: degree must be >= 1");
  return sup_norm / (2.0 * eta * eta * static_cast<double>(n));
}

double bernstein_total_bound(double lipschitz, double sup_norm, double eta, int n) {
  if (lipschitz < 0.0) throw InvalidArgument("bernstein_total_bound: negative Lipschitz constant");
  return lipschitz * eta + bernstein_tail_bound(sup_norm, eta, n);
}

}  // namespace bisteer
