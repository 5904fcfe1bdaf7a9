// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#include "htype/connect.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "htype/numeric.hpp"

namespace htype {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanPoints = 1024;
constexpr double kTangentBand = 1e-8;
constexpr double kEndpointTol = 1e-9;

double alpha_scale_tol(double alpha) { return 8.0 * std::numeric_limits<double>::epsilon() * std::abs(alpha); }

// Offset from a pole at which mu first exceeds `target`, searching inward
// from the pole side. `sign` is +1 for the left end of an interval.
double pole_offset(double pole, double sign, double target, double max_offset) {
  double delta = std::min(0.5, max_offset);
  while (mu(pole + sign * delta) < target) {
    delta *= 0.5;
    if (delta < 4.0 * alpha_scale_tol(pole) + std::numeric_limits<double>::min())
      throw Error(ErrorCode::kNumerical, "solve_mu: target too large to bracket near a pole");
  }
  return delta;
}

struct IntervalMin {
  double alpha;
  double value;
};

IntervalMin interval_min(double lo, double hi) {
  double best_a = lo;
  double best_v = std::numeric_limits<double>::infinity();
  int best_i = 0;
  const double step = (hi - lo) / (kScanPoints + 1);
  for (int i = 1; i <= kScanPoints; ++i) {
    const double a = lo + i * step;
    const double v = mu(a);
    if (v < best_v) {
      best_v = v;
      best_a = a;
      best_i = i;
    }
  }
  // Golden-section polish inside the neighbouring grid cells.
  double a = lo + (best_i - 1) * step;
  double b = std::min(hi, lo + (best_i + 1) * step);
  if (best_i == kScanPoints && b >= hi) b = hi - alpha_scale_tol(hi);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = mu(c);
  double fd = mu(d);
  for (int it = 0; it < 200 && b - a > 4.0 * alpha_scale_tol(b); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = mu(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = mu(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = mu(mid);
  if (fm < best_v) return {mid, fm};
  return {best_a, best_v};
}

MuRoot refine(double target, double lo, double hi, bool near_tangent) {
  const auto f = [target](double a) { return mu(a) - target; };
  const RootEstimate est = refine_root(f, make_bracket(f, lo, hi), 0.0);
  return {2.0 * est.root, lo, hi, est.residual, near_tangent};
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector to_vector(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

void mark_minimizers(ConnectionResult& res) {
  res.minimizer_indices.clear();
  if (res.geodesics.empty()) {
    res.distance = 0.0;
    return;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : res.geodesics) best = std::min(best, g.length);
  for (std::size_t i = 0; i < res.geodesics.size(); ++i) {
    const bool minimal = res.geodesics[i].length <= best * (1.0 + 1e-12);
    res.geodesics[i].is_minimizer = minimal;
    if (minimal) res.minimizer_indices.push_back(i);
  }
  res.distance = best;
}

double endpoint_miss(const Algebra& alg, const GeodesicSpec& spec, const GroupPoint& target) {
  const GroupPoint end = eval_geodesic(alg, spec, 1.0).point;
  return std::max((end.x - target.x).norm(), (end.z - target.z).norm());
}

double target_scale(const GroupPoint& p) { return std::max({1.0, p.x.norm(), p.z.norm()}); }

}  // namespace

double mu(double alpha) {
  if (!std::isfinite(alpha)) throw Error(ErrorCode::kDomain, "mu: non-finite input");
  if (std::abs(alpha) < kSeriesGuard) {
    const double a2 = alpha * alpha;
    return alpha * (2.0 / 3.0 + a2 * (4.0 / 45.0 + a2 * (4.0 / 315.0)));
  }
  const double k = std::round(alpha / kPi);
  if (k != 0.0 && std::abs(alpha - k * kPi) <= alpha_scale_tol(alpha))
    throw Error(ErrorCode::kDomain, "mu: argument is a pole (nonzero multiple of pi)");
  const double s = std::sin(alpha);
  // (2a - sin 2a) / (2 sin^2 a)
  return u_minus_sin(2.0 * alpha) / (2.0 * s * s);
}

double nu(double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "nu: argument must be non-negative");
  if (alpha < kSeriesGuard) {
    const double a = alpha;
    return 1.0 + a * (-1.0 / 3.0 + a * (7.0 / 36.0 + a * (-41.0 / 540.0 + a * (43.0 / 1296.0))));
  }
  const double h = std::sin(0.5 * alpha);
  // 1 - cos a = 2 sin^2(a/2)
  return alpha * alpha / (2.0 * (2.0 * h * h + u_minus_sin(alpha)));
}

RootSet solve_mu(double target_ratio, double alpha_cap) {
  if (!(target_ratio > 0.0) || !std::isfinite(target_ratio))
    throw Error(ErrorCode::kInvalidArgument, "solve_mu: target ratio must be positive");
  if (!(alpha_cap > 0.0) || !std::isfinite(alpha_cap))
    throw Error(ErrorCode::kInvalidArgument, "solve_mu: alpha_cap must be positive");

  RootSet set;
  set.target_ratio = target_ratio;
  const double band = kTangentBand * std::max(1.0, target_ratio);

  // First branch: mu increases from 0 to +inf on (0, pi).
  {
    double hi;
    if (alpha_cap < kPi) {
      hi = alpha_cap;
      if (mu(hi) < target_ratio)
        throw Error(ErrorCode::kInvalidArgument, "solve_mu: alpha_cap too small to contain the first root");
    } else {
      hi = kPi - pole_offset(kPi, -1.0, target_ratio, 0.5);
    }
    set.roots.push_back(refine(target_ratio, 0.0, hi, false));
  }

  // Later branches: mu -> +inf at both poles with a single interior minimum.
  for (int n = 1; n * kPi < alpha_cap; ++n) {
    const double lo_pole = n * kPi;
    const bool truncated = (n + 1) * kPi > alpha_cap;
    const double hi_end = truncated ? alpha_cap : (n + 1) * kPi;
    const double lo = lo_pole + 4.0 * alpha_scale_tol(lo_pole);
    const double hi = truncated ? hi_end : hi_end - 4.0 * alpha_scale_tol(hi_end);
    if (!(hi > lo)) break;

    const IntervalMin low = interval_min(lo, hi);
    const bool tangent = std::abs(low.value - target_ratio) <= band;
    if (low.value > target_ratio) {
      if (tangent) ++set.near_tangent_misses;
      continue;
    }

    const double left = lo_pole + pole_offset(lo_pole, +1.0, target_ratio, 0.5 * (low.alpha - lo_pole));
    set.roots.push_back(refine(target_ratio, left, low.alpha, tangent));

    double right = 0.0;
    bool has_right = false;
    if (!truncated) {
      right = hi_end - pole_offset(hi_end, -1.0, target_ratio, 0.5 * (hi_end - low.alpha));
      has_right = true;
    } else if (mu(hi_end) >= target_ratio) {
      right = hi_end;
      has_right = true;
    }
    if (has_right && low.value < target_ratio) set.roots.push_back(refine(target_ratio, low.alpha, right, tangent));
  }
  return set;
}

std::string_view to_string(TargetClass c) {
  switch (c) {
    case TargetClass::kOrigin: return "origin";
    case TargetClass::kHorizontal: return "horizontal";
    case TargetClass::kVertical: return "vertical";
    case TargetClass::kGeneric: return "generic";
  }
  return "unknown";
}

std::string_view to_string(Multiplicity m) {
  return m == Multiplicity::kSphereFamily ? "sphere-family" : "finite";
}

TargetClass classify_target(const GroupPoint& p) {
  const double xn = p.x.norm();
  const double zn = p.z.norm();
  const double s = std::max(xn, std::sqrt(zn));
  if (s == 0.0) return TargetClass::kOrigin;
  const bool x_zero = xn <= 1e-12 * s;
  const bool z_zero = zn <= 1e-12 * s * s;
  if (x_zero) return TargetClass::kVertical;
  if (z_zero) return TargetClass::kHorizontal;
  return TargetClass::kGeneric;
}

std::vector<ConnectingGeodesic> connect_vertical(const Algebra& alg, const Vector& z, int k_max,
                                                 const Vector& direction) {
  if (static_cast<std::size_t>(z.size()) != alg.r())
    throw Error(ErrorCode::kDimensionMismatch, "vertical target must have length r");
  if (static_cast<std::size_t>(direction.size()) != alg.m())
    throw Error(ErrorCode::kDimensionMismatch, "direction must have length m");
  const double zn = z.norm();
  if (!(zn > 0.0)) throw Error(ErrorCode::kInvalidArgument, "connect_vertical: z must be nonzero");
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument, "connect_vertical: direction must be a unit vector");
  if (k_max < 1) throw Error(ErrorCode::kInvalidArgument, "connect_vertical: k_max must be positive");

  std::vector<ConnectingGeodesic> out;
  for (int k = 1; k <= k_max; ++k) {
    const double speed2 = 4.0 * k * kPi * zn;
    ConnectingGeodesic g;
    g.spec.xdot0 = std::sqrt(speed2) * direction;
    g.spec.theta = Covector(8.0 * k * k * kPi * kPi / speed2 * z);
    g.length = std::sqrt(speed2);
    g.branch = k;
    out.push_back(std::move(g));
  }
  return out;
}

ConnectionResult connect_generic(const Algebra& alg, const GroupPoint& target, double alpha_cap) {
  check_point(alg, target);
  const double xn = target.x.norm();
  const double zn = target.z.norm();
  if (!(xn > 0.0) || !(zn > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "connect_generic: needs x != 0 and z != 0");

  ConnectionResult res;
  res.target = target;
  res.target_class = TargetClass::kGeneric;
  res.roots = solve_mu(4.0 * zn / (xn * xn), alpha_cap);

  const auto m = static_cast<Eigen::Index>(alg.m());
  const double tol = kEndpointTol * target_scale(target);
  int branch = 0;
  for (const MuRoot& root : res.roots.roots) {
    const double tn = root.theta_norm;
    const double half = 0.5 * tn;
    ConnectingGeodesic g;
    g.spec.theta = Covector(tn / zn * target.z);
    const Matrix om = omega(alg, g.spec.theta);
    // Inverse of x(1) = (sin|th|/|th| Id + (1-cos|th|)/|th|^2 Omega) xdot(0).
    g.spec.xdot0 = (half * std::cos(half) / std::sin(half) * Matrix::Identity(m, m) - 0.5 * om) * target.x;
    g.length = g.spec.xdot0.norm();
    g.branch = ++branch;
    const double miss = endpoint_miss(alg, g.spec, target);
    if (!(miss <= tol))
      throw Error(ErrorCode::kNumerical, "connect_generic: branch " + std::to_string(branch) +
                                             " misses the target by " + std::to_string(miss));
    res.geodesics.push_back(std::move(g));
  }
  mark_minimizers(res);
  res.in_cut_locus = res.minimizer_indices.size() > 1;
  return res;
}

ConnectionResult connect_horizontal(const Algebra& alg, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != alg.m())
    throw Error(ErrorCode::kDimensionMismatch, "horizontal target must have length m");
  if (!(x.norm() > 0.0)) throw Error(ErrorCode::kInvalidArgument, "connect_horizontal: x must be nonzero");

  ConnectionResult res;
  res.target = {x, Vector::Zero(static_cast<Eigen::Index>(alg.r()))};
  res.target_class = TargetClass::kHorizontal;
  ConnectingGeodesic g;
  g.spec.xdot0 = x;
  g.spec.theta = Covector(Vector::Zero(static_cast<Eigen::Index>(alg.r())));
  g.length = x.norm();
  g.branch = 1;
  res.geodesics.push_back(std::move(g));
  mark_minimizers(res);
  return res;
}

ConnectionResult classify(const Algebra& alg, const GroupPoint& target, const ConnectOptions& opts) {
  check_point(alg, target);
  switch (classify_target(target)) {
    case TargetClass::kOrigin: {
      ConnectionResult res;
      res.target = target;
      res.target_class = TargetClass::kOrigin;
      return res;
    }
    case TargetClass::kHorizontal: {
      ConnectionResult res = connect_horizontal(alg, target.x);
      res.target = target;
      return res;
    }
    case TargetClass::kGeneric:
      return connect_generic(alg, target, opts.alpha_cap);
    case TargetClass::kVertical:
      break;
  }

  ConnectionResult res;
  res.target = target;
  res.target_class = TargetClass::kVertical;
  res.multiplicity = Multiplicity::kSphereFamily;
  const auto m = static_cast<Eigen::Index>(alg.m());
  const Vector e1 = Vector::Unit(m, 0);
  const Vector e2 = Vector::Unit(m, 1);
  for (const Vector& dir : {Vector(e1), Vector(-e1), Vector(e2)}) {
    auto family = connect_vertical(alg, target.z, 1, dir);
    res.geodesics.push_back(std::move(family.front()));
  }
  if (opts.vertical_k_max > 1) {
    auto higher = connect_vertical(alg, target.z, opts.vertical_k_max, e1);
    for (std::size_t i = 1; i < higher.size(); ++i) res.geodesics.push_back(std::move(higher[i]));
  }
  mark_minimizers(res);
  res.in_cut_locus = true;
  return res;
}

std::string connection_to_json(const ConnectionResult& result) {
  nlohmann::json geos = nlohmann::json::array();
  for (const auto& g : result.geodesics) {
    geos.push_back({{"theta", to_std(g.spec.theta.values())},
                    {"xdot0", to_std(g.spec.xdot0)},
                    {"length", g.length},
                    {"branch", g.branch},
                    {"is_minimizer", g.is_minimizer}});
  }
  nlohmann::json doc = {
      {"target", {{"x", to_std(result.target.x)}, {"z", to_std(result.target.z)}}},
      {"class", std::string(to_string(result.target_class))},
      {"distance", result.distance},
      {"in_cut_locus", result.in_cut_locus},
      {"minimizer_multiplicity", std::string(to_string(result.multiplicity))},
      {"geodesics", std::move(geos)},
  };
  if (result.target_class == TargetClass::kGeneric) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : result.roots.roots)
      roots.push_back({{"theta_norm", r.theta_norm}, {"residual", r.residual}, {"near_tangent", r.near_tangent}});
    doc["roots"] = {{"target_ratio", result.roots.target_ratio},
                    {"values", std::move(roots)},
                    {"near_tangent_misses", result.roots.near_tangent_misses}};
  }
  return doc.dump();
}

ConnectionResult connection_from_json(const Algebra& alg, const std::string& text) {
  ConnectionResult res;
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    res.target.x = to_vector(doc.at("target").at("x"));
    res.target.z = to_vector(doc.at("target").at("z"));
    const auto cls = doc.at("class").get<std::string>();
    if (cls == "origin") res.target_class = TargetClass::kOrigin;
    else if (cls == "horizontal") res.target_class = TargetClass::kHorizontal;
    else if (cls == "vertical") res.target_class = TargetClass::kVertical;
    else if (cls == "generic") res.target_class = TargetClass::kGeneric;
    else throw Error(ErrorCode::kParse, "unknown class '" + cls + "'");
    res.distance = doc.at("distance").get<double>();
    res.in_cut_locus = doc.at("in_cut_locus").get<bool>();
    res.multiplicity = doc.at("minimizer_multiplicity").get<std::string>() == "sphere-family"
                           ? Multiplicity::kSphereFamily
                           : Multiplicity::kFinite;
    for (const auto& g : doc.at("geodesics")) {
      ConnectingGeodesic cg;
      cg.spec.theta = Covector(to_vector(g.at("theta")));
      cg.spec.xdot0 = to_vector(g.at("xdot0"));
      cg.length = g.at("length").get<double>();
      cg.branch = g.value("branch", 0);
      cg.is_minimizer = g.at("is_minimizer").get<bool>();
      res.geodesics.push_back(std::move(cg));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("connection JSON: ") + e.what());
  }

  check_point(alg, res.target);
  if (classify_target(res.target) != res.target_class)
    throw Error(ErrorCode::kParse, "connection JSON: class does not match the target");

  GroupPoint reached = res.target;
  if (res.target_class == TargetClass::kVertical) reached.x.setZero();
  const double tol = kEndpointTol * target_scale(res.target);
  std::vector<bool> flagged;
  for (const auto& g : res.geodesics) {
    check_spec(alg, g.spec);
    if (endpoint_miss(alg, g.spec, reached) > tol)
      throw Error(ErrorCode::kNumerical, "connection JSON: a geodesic misses the target");
    if (std::abs(g.length - g.spec.xdot0.norm()) > 1e-12 * std::max(1.0, g.length))
      throw Error(ErrorCode::kNumerical, "connection JSON: length disagrees with |xdot0|");
    flagged.push_back(g.is_minimizer);
  }
  ConnectionResult check = res;
  mark_minimizers(check);
  for (std::size_t i = 0; i < flagged.size(); ++i)
    if (flagged[i] != check.geodesics[i].is_minimizer)
      throw Error(ErrorCode::kNumerical, "connection JSON: minimizer flags are inconsistent");
  if (std::abs(check.distance - res.distance) > 1e-12 * std::max(1.0, res.distance))
    throw Error(ErrorCode::kNumerical, "connection JSON: distance is not the minimal length");
  const bool cut = res.target_class == TargetClass::kVertical || check.minimizer_indices.size() > 1;
  if (cut != res.in_cut_locus) throw Error(ErrorCode::kNumerical, "connection JSON: cut-locus verdict is inconsistent");
  res.minimizer_indices = check.minimizer_indices;
  return res;
}

}  // namespace htype
