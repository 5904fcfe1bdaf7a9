// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/algebra.hpp"

namespace htype {

/// Initial data (xdot(0), theta) of a normal geodesic from the origin.
/// theta = 0 gives the straight line t -> (t xdot(0), 0).
struct GeodesicSpec {
  Vector xdot0;
  Covector theta;
};

struct GeodesicSample {
  double t = 0.0;
  GroupPoint point;
  Vector velocity_x;
};

void check_spec(const Algebra& alg, const GeodesicSpec& spec);

/// Closed-form point and horizontal velocity at time t:
///   x(t)  = sin(t|th|)/|th| xd + (1 - cos(t|th|))/|th|^2 Omega xd
///   z(t)  = |xd|^2 / (2|th|^2) (t - sin(t|th|)/|th|) th
///   x'(t) = cos(t|th|) xd + sin(t|th|)/|th| Omega xd
/// All three stay continuous through theta -> 0.
GeodesicSample eval_geodesic(const Algebra& alg, const GeodesicSpec& spec, double t);

/// z'(t) from the simplified vertical formula: th |xd|^2 (1 - cos(t|th|)) / (2|th|^2).
Vector zdot_closed(const Algebra& alg, const GeodesicSpec& spec, double t);

/// z'(t) evaluated from the unsimplified four-term quadratic form in xd
/// (C^k, C^k Omega, Omega^T C^k and Omega^T C^k Omega terms). Kept only as an
/// oracle for `zdot_closed`; throws kDomain when theta = 0.
Vector zdot_full(const Algebra& alg, const GeodesicSpec& spec, double t);

/// Vertical rate of a horizontal curve through x with velocity xdot:
/// z' = (1/2)[x, xdot].
Vector horizontal_lift_rate(const Algebra& alg, const Vector& x, const Vector& xdot);

/// Length over [0, T]; geodesics run at constant speed |xdot(0)|.
double geodesic_length(const GeodesicSpec& spec, double horizon);

}  // namespace htype
