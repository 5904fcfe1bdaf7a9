// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "htype/algebra.hpp"
#include "htype/geodesics.hpp"

namespace htype {

/// Default search range alpha = |theta|/2 in (0, 8 pi).
inline constexpr double kDefaultAlphaCap = 8.0 * std::numbers::pi;

/// mu(alpha) = alpha / sin^2(alpha) - cot(alpha). Odd, mu(0) = 0, with poles
/// at the nonzero multiples of pi; inputs within a few ulps of a pole throw
/// kDomain.
double mu(double alpha);

/// nu(alpha) = alpha^2 / (2 (1 + alpha - cos(alpha) - sin(alpha))), nu(0) = 1.
/// Throws kInvalidArgument for alpha < 0.
double nu(double alpha);

struct MuRoot {
  double theta_norm;  ///< |theta| = 2 alpha
  double lo;          ///< final bracket, alpha variable
  double hi;
  double residual;    ///< mu(alpha) - target
  bool near_tangent;  ///< the interval minimum sits within 1e-8 of the target
};

/// Solutions of mu(|theta|/2) = target_ratio, ordered by |theta|.
struct RootSet {
  double target_ratio = 0.0;
  std::vector<MuRoot> roots;
  int near_tangent_misses = 0;  ///< intervals whose minimum just misses the target
};

/// Enumerates every solution alpha in (0, alpha_cap): exactly one in (0, pi)
/// and zero, one or two in each later interval (n pi, (n+1) pi), located
/// around the interval minimum and refined by bisection to full precision.
RootSet solve_mu(double target_ratio, double alpha_cap = kDefaultAlphaCap);

enum class TargetClass { kOrigin, kHorizontal, kVertical, kGeneric };
enum class Multiplicity { kFinite, kSphereFamily };

std::string_view to_string(TargetClass c);
std::string_view to_string(Multiplicity m);

struct ConnectingGeodesic {
  GeodesicSpec spec;
  double length = 0.0;
  int branch = 0;  ///< k: root index (generic) or winding number (vertical)
  bool is_minimizer = false;
};

struct ConnectionResult {
  GroupPoint target;
  TargetClass target_class = TargetClass::kOrigin;
  std::vector<ConnectingGeodesic> geodesics;
  std::vector<std::size_t> minimizer_indices;
  double distance = 0.0;
  bool in_cut_locus = false;
  Multiplicity multiplicity = Multiplicity::kFinite;
  RootSet roots;  ///< populated for generic targets only
};

struct ConnectOptions {
  double alpha_cap = kDefaultAlphaCap;
  int vertical_k_max = 3;
};

/// Zero bands scale with the dilation weights: |x| <= 1e-12 s and
/// |z| <= 1e-12 s^2 with s = max(|x|, sqrt|z|).
TargetClass classify_target(const GroupPoint& p);

/// Geodesics reaching (0, z) at t = 1 with initial direction `direction`
/// (unit), k = 1..k_max. Branch k has |theta| = 2 k pi and length^2 = 4 k pi |z|.
std::vector<ConnectingGeodesic> connect_vertical(const Algebra& alg, const Vector& z, int k_max,
                                                 const Vector& direction);

/// All geodesics to (x, z) with x, z != 0 whose |theta|/2 lies below
/// alpha_cap. Every endpoint is re-evaluated; a miss beyond 1e-9 (relative to
/// the target scale) throws kNumerical.
ConnectionResult connect_generic(const Algebra& alg, const GroupPoint& target,
                                 double alpha_cap = kDefaultAlphaCap);

/// The straight line t -> (t x, 0); no geodesic with theta != 0 returns to z = 0.
ConnectionResult connect_horizontal(const Algebra& alg, const Vector& x);

/// Dispatches on the target class. Vertical targets are cut points: the
/// minimizers form a sphere family, represented by the witnesses +e1, -e1
/// and e2 at k = 1 plus the higher branches k = 2..vertical_k_max along e1.
ConnectionResult classify(const Algebra& alg, const GroupPoint& target, const ConnectOptions& opts = {});

std::string connection_to_json(const ConnectionResult& result);

/// Parses a serialized result and re-validates it against `alg`: endpoints,
/// lengths, minimizer flags, distance and the cut-locus verdict.
ConnectionResult connection_from_json(const Algebra& alg, const std::string& text);

}  // namespace htype
