#pragma once

#include "bisteer/grid.hpp"

namespace bisteer {

/// Parameters of the smoothing convolution h_r = (phi_r * h) + r with the
/// canonical unit bump phi(x) = c e^{1/(|x|^2 - 1)} on |x| < 1, scaled to
/// radius r by phi_r(x) = r^{-d} phi(x/r).
struct MollifierParams {
  double radius = 0.1;            // r > 0
  int normalizer_resolution = 2001;  // points per axis for the bump mass
  double neg_tolerance = 0.0;     // allowed magnitude of negative input values
};

/// Normalization constant c = 1 / integral of e^{1/(|x|^2-1)} over the unit
/// ball, computed by composite midpoint quadrature with `resolution` points
/// per axis on [-1,1]^d. Deterministic for fixed (d, resolution); values are
/// cached.
double bump_normalizer(int dimension, int resolution);

/// Smooths a nonnegative field: h_r(x) = (phi_r * h)(x) + r at every grid
/// node, with h taken piecewise-multilinear between nodes and extended by
/// zero outside the domain. The convolution is a midpoint-rule sum over a
/// lattice of spacing min(grid spacing, r/20) covering the ball B(x, r),
/// normalized by the lattice mass of the bump so the discrete kernel has
/// unit mass. Output satisfies r <= h_r <= linf_norm(h) + r.
///
/// Input values below -neg_tolerance raise InvalidArgument; values in
/// [-neg_tolerance, 0) are clamped to zero.
Field mollify(const Field& h, const MollifierParams& params);
Field mollify(const Field& h, double radius);

/// a_r = ln(mollify(h, r)); finite everywhere because mollify output >= r.
Field smooth_exponent(const Field& h, double radius, double neg_tolerance = 0.0);

}  // namespace bisteer
