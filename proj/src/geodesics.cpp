// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#include "htype/geodesics.hpp"

#include <cmath>

#include "htype/numeric.hpp"

namespace htype {

void check_spec(const Algebra& alg, const GeodesicSpec& spec) {
  if (static_cast<std::size_t>(spec.xdot0.size()) != alg.m())
    throw Error(ErrorCode::kDimensionMismatch, "xdot0 must have length m=" + std::to_string(alg.m()));
  if (spec.theta.size() != alg.r())
    throw Error(ErrorCode::kDimensionMismatch, "theta must have length r=" + std::to_string(alg.r()));
  if (!spec.xdot0.allFinite()) throw Error(ErrorCode::kInvalidArgument, "xdot0 has non-finite entries");
}

GeodesicSample eval_geodesic(const Algebra& alg, const GeodesicSpec& spec, double t) {
  check_spec(alg, spec);
  if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "t must be finite");

  const double u = t * spec.theta.norm();
  const Vector omega_xd = omega(alg, spec.theta) * spec.xdot0;
  const double sin_term = t * sinc_like(u);          // sin(t|th|)/|th|
  const double cos_term = t * t * versine_ratio(u);  // (1 - cos(t|th|))/|th|^2

  GeodesicSample s;
  s.t = t;
  s.point.x = sin_term * spec.xdot0 + cos_term * omega_xd;
  s.point.z = 0.5 * spec.xdot0.squaredNorm() * t * t * t * cubic_ratio(u) * spec.theta.values();
  s.velocity_x = std::cos(u) * spec.xdot0 + sin_term * omega_xd;
  return s;
}

Vector zdot_closed(const Algebra& alg, const GeodesicSpec& spec, double t) {
  check_spec(alg, spec);
  const double u = t * spec.theta.norm();
  return 0.5 * spec.xdot0.squaredNorm() * t * t * versine_ratio(u) * spec.theta.values();
}

Vector zdot_full(const Algebra& alg, const GeodesicSpec& spec, double t) {
  check_spec(alg, spec);
  if (spec.theta.is_zero())
    throw Error(ErrorCode::kDomain, "zdot_full is undefined for theta = 0; use the straight-line branch");

  const double n = spec.theta.norm();
  const double c = std::cos(t * n);
  const double s = std::sin(t * n);
  const Matrix om = omega(alg, spec.theta);
  const Vector& xd = spec.xdot0;

  Vector out(static_cast<Eigen::Index>(alg.r()));
  for (std::size_t k = 0; k < alg.r(); ++k) {
    const Matrix& ck = alg.c(k);
    const Matrix form = ck / n * c * s + ck * om / (n * n) * c * (1.0 - c) +
                        om.transpose() * ck / (n * n) * s * s +
                        om.transpose() * ck * om / (n * n * n) * s * (1.0 - c);
    out(static_cast<Eigen::Index>(k)) = 0.5 * xd.dot(form * xd);
  }
  return out;
}

Vector horizontal_lift_rate(const Algebra& alg, const Vector& x, const Vector& xdot) {
  return 0.5 * bracket(alg, x, xdot);
}

double geodesic_length(const GeodesicSpec& spec, double horizon) {
  if (!(horizon >= 0)) throw Error(ErrorCode::kInvalidArgument, "horizon must be non-negative");
  return horizon * spec.xdot0.norm();
}

}  // namespace htype
