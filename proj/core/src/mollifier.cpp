#include "bisteer/mollifier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace bisteer {

namespace {

double unit_bump(double norm_sq) {
  if (norm_sq >= 1.0) return 0.0;
  return std::exp(1.0 / (norm_sq - 1.0));
}

// Multilinear interpolation of the node values with the implicit zero
// boundary and zero extension beyond [0,1]^d. Written as (1-f)*a + f*b per
// axis so nonnegative inputs can never interpolate negative.
double interp_zero_extended(const Field& u, double x1, double x2) {
  const SpatialGrid& g = u.grid();
  const double h = g.spacing();
  const int n = g.nodes_per_axis;
  const auto node = [&](int i, int j) -> double {
    if (i < 1 || i > n || j < 1 || j > n) return 0.0;
    if (g.dimension == 1) return u[static_cast<std::size_t>(i - 1)];
    return u[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j - 1)];
  };
  if (x1 <= 0.0 || x1 >= 1.0) return 0.0;
  int i = static_cast<int>(x1 / h);
  if (i > n) i = n;
  const double f1 = x1 / h - i;
  if (g.dimension == 1) {
    return (1.0 - f1) * node(i, 1) + f1 * node(i + 1, 1);
  }
  if (x2 <= 0.0 || x2 >= 1.0) return 0.0;
  int j = static_cast<int>(x2 / h);
  if (j > n) j = n;
  const double f2 = x2 / h - j;
  const double lo = (1.0 - f2) * node(i, j) + f2 * node(i, j + 1);
  const double hi = (1.0 - f2) * node(i + 1, j) + f2 * node(i + 1, j + 1);
  return (1.0 - f1) * lo + f1 * hi;
}

}  // namespace

double bump_normalizer(int dimension, int resolution) {
  if (dimension != 1 && dimension != 2) {
    throw InvalidArgument("bump_normalizer: dimension must be 1 or 2");
  }
  if (resolution < 1000) {
    throw InvalidArgument("bump_normalizer: need at least 1000 points per axis");
  }

  static std::mutex mutex;
  static std::map<std::pair<int, int>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({dimension, resolution});
    if (it != cache.end()) return it->second;
  }

  const double step = 2.0 / resolution;
  double mass = 0.0;
  if (dimension == 1) {
    for (int i = 0; i < resolution; ++i) {
      const double x = -1.0 + (i + 0.5) * step;
      mass += unit_bump(x * x);
    }
    mass *= step;
  } else {
    for (int i = 0; i < resolution; ++i) {
      const double x = -1.0 + (i + 0.5) * step;
      double row = 0.0;
      for (int j = 0; j < resolution; ++j) {
        const double y = -1.0 + (j + 0.5) * step;
        row += unit_bump(x * x + y * y);
      }
      mass += row;
    }
    mass *= step * step;
  }
  const double c = 1.0 / mass;

  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(std::pair<int, int>{dimension, resolution}, c);
  return c;
}

Field mollify(const Field& h, const MollifierParams& params) {
  const double r = params.radius;
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidArgument("mollify: radius must be positive");
  }

  double min_value = 0.0;
  for (double v : h.values()) min_value = std::min(min_value, v);
  if (min_value < -params.neg_tolerance) {
    std::ostringstream oss;
    oss << "mollify: input has negative values down to " << min_value
        << " (tolerance " << params.neg_tolerance << ")";
    throw InvalidArgument(oss.str());
  }
  Field clamped = min_value < 0.0
      ? map(h, [](double v) { return v < 0.0 ? 0.0 : v; })
      : h;

  const SpatialGrid& g = h.grid();
  const int d = g.dimension;
  const double c = bump_normalizer(d, params.normalizer_resolution);
  const double q = std::min(g.spacing(), r / 20.0);
  const int m = static_cast<int>(std::ceil(r / q));
  const double cell = d == 1 ? q : q * q;

  // The lattice of cell-center offsets covering B(0, r) is node independent:
  // precompute offsets and kernel weights once. `mass` is the lattice mass
  // of phi_r; dividing by it gives the discrete kernel exactly unit mass.
  struct Point {
    double o1, o2, w;
  };
  std::vector<Point> lattice;
  double mass = 0.0;
  const double rd = d == 1 ? r : r * r;
  if (d == 1) {
    for (int i = -m; i < m; ++i) {
      const double o = (i + 0.5) * q;
      if (std::abs(o) >= r) continue;
      const double w = (c / rd) * unit_bump((o / r) * (o / r)) * cell;
      if (w > 0.0) {
        lattice.push_back({o, 0.0, w});
        mass += w;
      }
    }
  } else {
    for (int i = -m; i < m; ++i) {
      for (int j = -m; j < m; ++j) {
        const double o1 = (i + 0.5) * q;
        const double o2 = (j + 0.5) * q;
        const double nsq = (o1 * o1 + o2 * o2) / (r * r);
        if (nsq >= 1.0) continue;
        const double w = (c / rd) * unit_bump(nsq) * cell;
        if (w > 0.0) {
          lattice.push_back({o1, o2, w});
          mass += w;
        }
      }
    }
  }
  if (lattice.empty() || mass <= 0.0) {
    throw Error("mollify: empty quadrature lattice (internal fault)");
  }

  std::vector<double> out(clamped.size());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto x = g.coordinates(idx);
    double acc = 0.0;
    for (const Point& p : lattice) {
      acc += p.w * interp_zero_extended(clamped, x[0] - p.o1, x[1] - p.o2);
    }
    out[idx] = acc / mass + r;
  }
  return Field(g, std::move(out));
}

Field mollify(const Field& h, double radius) {
  MollifierParams params;
  params.radius = radius;
  return mollify(h, params);
}

Field smooth_exponent(const Field& h, double radius, double neg_tolerance) {
  MollifierParams params;
  params.radius = radius;
  params.neg_tolerance = neg_tolerance;
  const Field hr = mollify(h, params);
  return map(hr, [](double v) { return std::log(v); });
}

}  // namespace bisteer
