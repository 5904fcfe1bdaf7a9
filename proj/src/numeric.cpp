// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#include "htype/numeric.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace htype {

double sinc_like(double u) {
  if (std::abs(u) < kSeriesGuard) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0);
  }
  return std::sin(u) / u;
}

double versine_ratio(double u) {
  if (std::abs(u) < kSeriesGuard) {
    const double u2 = u * u;
    return 0.5 - u2 / 24.0 * (1.0 - u2 / 30.0);
  }
  const double s = std::sin(0.5 * u);
  return 2.0 * s * s / (u * u);
}

double u_minus_sin(double u) {
  if (std::abs(u) >= 1.0) return u - std::sin(u);
  // u^3/3! - u^5/5! + ... ; converges to full precision within ~10 terms.
  const double u2 = u * u;
  double term = u * u2 / 6.0;
  double sum = term;
  for (int n = 4; n < 40; n += 2) {
    term *= -u2 / (n * (n + 1.0));
    const double next = sum + term;
    if (next == sum) break;
    sum = next;
  }
  return sum;
}

double cubic_ratio(double u) {
  if (std::abs(u) < kSeriesGuard) {
    const double u2 = u * u;
    return 1.0 / 6.0 - u2 / 120.0 * (1.0 - u2 / 42.0);
  }
  return u_minus_sin(u) / (u * u * u);
}

Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "bracket requires lo < hi");
  Bracket b{lo, hi, f(lo), f(hi)};
  if (!std::isfinite(b.f_lo) || !std::isfinite(b.f_hi))
    throw Error(ErrorCode::kInvalidArgument, "bracket end values must be finite");
  if ((b.f_lo > 0 && b.f_hi > 0) || (b.f_lo < 0 && b.f_hi < 0))
    throw Error(ErrorCode::kInvalidArgument, "bracket does not enclose a sign change");
  return b;
}

RootEstimate refine_root(const std::function<double(double)>& f, Bracket b, double tol) {
  if (!(b.lo < b.hi) || (b.f_lo > 0 && b.f_hi > 0) || (b.f_lo < 0 && b.f_hi < 0))
    throw Error(ErrorCode::kInvalidArgument, "invalid bracket");
  if (b.f_lo == 0.0) return {b.lo, 0.0};
  if (b.f_hi == 0.0) return {b.hi, 0.0};

  while (b.hi - b.lo > tol) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, 0.0};
    if ((fm < 0) == (b.f_lo < 0)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  const double mid = 0.5 * (b.lo + b.hi);
  RootEstimate best{mid, f(mid)};
  if (std::abs(b.f_lo) < std::abs(best.residual)) best = {b.lo, b.f_lo};
  if (std::abs(b.f_hi) < std::abs(best.residual)) best = {b.hi, b.f_hi};
  return best;
}

Vector fd_derivative(const std::function<Vector(double)>& f, double t, double h) {
  if (!(h > 0)) throw Error(ErrorCode::kInvalidArgument, "step must be positive");
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

GroupPoint polyline_endpoint(const Algebra& alg, const PolylinePath& path) {
  if (path.knots.size() < 2) throw Error(ErrorCode::kInvalidArgument, "polyline needs at least two knots");
  Vector z = Vector::Zero(static_cast<Eigen::Index>(alg.r()));
  for (std::size_t i = 0; i + 1 < path.knots.size(); ++i)
    z += 0.5 * bracket(alg, path.knots[i], path.knots[i + 1]);
  return {path.knots.back(), z};
}

double polyline_length(const PolylinePath& path) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < path.knots.size(); ++i) len += (path.knots[i + 1] - path.knots[i]).norm();
  return len;
}

namespace {

// Stationary points of sum |p_{i+1} - p_i|^2 subject to the exact endpoint,
// found by Newton's method on the Lagrange system. Knots p_0 = 0 and
// p_{K-1} = x are fixed; the unknowns are the interior knots.
class PolylineSolver {
 public:
  PolylineSolver(const Algebra& alg, const GroupPoint& target, int knot_count)
      : alg_(alg), target_(target), knots_(knot_count), m_(static_cast<Eigen::Index>(alg.m())),
        n_(static_cast<Eigen::Index>(alg.r())), vars_((knot_count - 2) * m_) {}

  Eigen::Index vars() const { return vars_; }

  PolylinePath path(const Vector& y) const {
    PolylinePath p;
    p.knots.reserve(static_cast<std::size_t>(knots_));
    p.knots.push_back(Vector::Zero(m_));
    for (int i = 1; i + 1 < knots_; ++i) p.knots.push_back(y.segment((i - 1) * m_, m_));
    p.knots.push_back(target_.x);
    return p;
  }

  Vector constraint(const PolylinePath& p) const { return polyline_endpoint(alg_, p).z - target_.z; }

  Vector energy_gradient(const PolylinePath& p) const {
    Vector g(vars_);
    for (int j = 1; j + 1 < knots_; ++j)
      g.segment((j - 1) * m_, m_) = 2.0 * (2.0 * p.knots[j] - p.knots[j - 1] - p.knots[j + 1]);
    return g;
  }

  Matrix jacobian(const PolylinePath& p) const {
    Matrix a(n_, vars_);
    for (Eigen::Index k = 0; k < n_; ++k) {
      const Matrix& ck = alg_.c(static_cast<std::size_t>(k));
      for (int j = 1; j + 1 < knots_; ++j)
        a.row(k).segment((j - 1) * m_, m_) = (0.5 * ck * (p.knots[j - 1] - p.knots[j + 1])).transpose();
    }
    return a;
  }

  Matrix lagrangian_hessian(const Vector& lambda) const {
    Matrix h = Matrix::Zero(vars_, vars_);
    const Matrix id = Matrix::Identity(m_, m_);
    const Matrix mix = 0.5 * combine(alg_, lambda);
    for (int j = 0; j + 2 < knots_; ++j) {
      h.block(j * m_, j * m_, m_, m_) = 4.0 * id;
      if (j + 3 < knots_) {
        h.block(j * m_, (j + 1) * m_, m_, m_) = -2.0 * id - mix;
        h.block((j + 1) * m_, j * m_, m_, m_) = -2.0 * id + mix;
      }
    }
    return h;
  }

  struct Residual {
    Vector stationarity;
    Vector feasibility;
    double norm() const { return std::hypot(stationarity.norm(), feasibility.norm()); }
  };

  Residual residual(const Vector& y, const Vector& lambda) const {
    const PolylinePath p = path(y);
    return {energy_gradient(p) + jacobian(p).transpose() * lambda, constraint(p)};
  }

  // Returns false if Newton stalls before reaching feasibility.
  bool solve(Vector& y, Vector& lambda) const {
    {
      const PolylinePath p = path(y);
      const Matrix a = jacobian(p);
      lambda = (a * a.transpose()).completeOrthogonalDecomposition().solve(-a * energy_gradient(p));
    }
    Residual res = residual(y, lambda);
    for (int iter = 0; iter < 200; ++iter) {
      if (res.stationarity.norm() <= 1e-11 * scale() && res.feasibility.norm() <= 1e-14 * zscale()) return true;

      const PolylinePath p = path(y);
      const Matrix a = jacobian(p);
      Matrix kkt = Matrix::Zero(vars_ + n_, vars_ + n_);
      kkt.topLeftCorner(vars_, vars_) = lagrangian_hessian(lambda);
      kkt.topRightCorner(vars_, n_) = a.transpose();
      kkt.bottomLeftCorner(n_, vars_) = a;
      Vector rhs(vars_ + n_);
      rhs << -res.stationarity, -res.feasibility;
      const Vector step = kkt.fullPivLu().solve(rhs);
      if (!step.allFinite()) return false;

      double s = 1.0;
      bool accepted = false;
      for (int halving = 0; halving < 40; ++halving, s *= 0.5) {
        Vector y_try = y + s * step.head(vars_);
        Vector l_try = lambda + s * step.tail(n_);
        Residual r_try = residual(y_try, l_try);
        if (r_try.norm() < (1.0 - 1e-4 * s) * res.norm()) {
          y = std::move(y_try);
          lambda = std::move(l_try);
          res = std::move(r_try);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    return res.feasibility.norm() <= 1e-12 * zscale();
  }

  double scale() const { return std::max({1.0, target_.x.norm(), std::sqrt(target_.z.norm())}); }
  double zscale() const { return std::max(1.0, target_.z.norm()); }

 private:
  const Algebra& alg_;
  const GroupPoint& target_;
  int knots_;
  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::Index vars_;
};

}  // namespace

BruteDistance brute_distance(const Algebra& alg, const GroupPoint& target, int knot_count, int restarts,
                             std::uint64_t seed) {
  check_point(alg, target);
  if (knot_count < 8) throw Error(ErrorCode::kInvalidArgument, "brute_distance needs at least 8 knots");
  if (restarts < 1) throw Error(ErrorCode::kInvalidArgument, "brute_distance needs at least one restart");

  const PolylineSolver solver(alg, target, knot_count);
  const double spread = std::max(target.x.norm(), std::sqrt(target.z.norm()));
  const auto m = static_cast<Eigen::Index>(alg.m());

  BruteDistance best;
  best.length = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL);
    std::normal_distribution<double> gauss(0.0, 0.5 * spread);

    Vector y(solver.vars());
    for (int i = 1; i + 1 < knot_count; ++i) {
      const double frac = static_cast<double>(i) / (knot_count - 1);
      for (Eigen::Index c = 0; c < m; ++c) y((i - 1) * m + c) = frac * target.x(c) + gauss(rng);
    }
    Vector lambda;
    if (!solver.solve(y, lambda)) continue;

    PolylinePath path = solver.path(y);
    const double len = polyline_length(path);
    ++best.feasible_restarts;
    if (len < best.length) {
      best.length = len;
      best.constraint_residual = solver.constraint(path).norm();
      best.best = std::move(path);
    }
  }
  if (best.feasible_restarts == 0)
    throw Error(ErrorCode::kNumerical, "brute_distance: no restart reached the target");
  return best;
}

}  // namespace htype
