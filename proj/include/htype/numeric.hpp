// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "htype/algebra.hpp"

namespace htype {

/// Below this magnitude the removable singularities at 0 switch to their
/// Taylor polynomials.
inline constexpr double kSeriesGuard = 1e-4;

/// sin(u) / u, with value 1 at u = 0.
double sinc_like(double u);

/// (1 - cos u) / u^2, evaluated as 2 sin^2(u/2) / u^2. Value 1/2 at 0.
double versine_ratio(double u);

/// u - sin(u) without cancellation for small |u|.
double u_minus_sin(double u);

/// (u - sin u) / u^3. Value 1/6 at 0.
double cubic_ratio(double u);

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Evaluates f at both ends; throws kInvalidArgument unless lo < hi and the
/// values do not share a strict sign.
Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi);

struct RootEstimate {
  double root;
  double residual;  ///< f(root)
};

/// Bisection until the bracket is no wider than `tol` (or cannot shrink in
/// floating point). Returns whichever of the final ends or midpoint has the
/// smallest |f|.
RootEstimate refine_root(const std::function<double(double)>& f, Bracket b, double tol);

/// Central difference (f(t+h) - f(t-h)) / 2h.
Vector fd_derivative(const std::function<Vector(double)>& f, double t, double h);

/// Piecewise-linear horizontal control starting at the origin. `knots`
/// holds the horizontal waypoints; knots.front() is the start.
struct PolylinePath {
  std::vector<Vector> knots;
};

/// Endpoint of the horizontal lift of a polyline started at (knots[0], 0).
/// Each straight segment p -> q adds (1/2)[p, q] to the vertical part.
GroupPoint polyline_endpoint(const Algebra& alg, const PolylinePath& path);

double polyline_length(const PolylinePath& path);

struct BruteDistance {
  double length = 0.0;             ///< best feasible polyline length
  double constraint_residual = 0;  ///< |z(path) - z_target| of the best path
  int feasible_restarts = 0;
  PolylinePath best;
};

/// Independent upper estimate of the Carnot-Caratheodory distance from the
/// origin: minimises polyline energy over `knot_count` knots with the
/// endpoint held exactly (Newton on the constrained stationarity system),
/// from `restarts` random starts. Only paths hitting the target to rounding
/// are accepted, so the result never undercuts the true distance by more
/// than roundoff. Throws kNumerical if no restart converges.
BruteDistance brute_distance(const Algebra& alg, const GroupPoint& target, int knot_count,
                             int restarts, std::uint64_t seed);

}  // namespace htype
