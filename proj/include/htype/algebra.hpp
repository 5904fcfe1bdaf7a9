// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "htype/error.hpp"

namespace htype {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Smallest dimension of a real module carrying `r` anticommuting complex
/// structures: (2,4,4,8,8,8,8,16) for r = 1..8 and d(r+8) = 16 d(r).
std::size_t min_module_dim(std::size_t r);

/**
 * Structure data of an H-type Lie algebra n = v + z with dim v = m and
 * dim z = r. The matrices C^1..C^r are skew-symmetric, square to -Id and
 * pairwise anticommute. Instances are immutable.
 */
class Algebra {
 public:
  /// Adopts the given matrices without checking the Clifford relations; use
  /// `verify_relations` (or `build_algebra` / `algebra_from_json`, which do).
  explicit Algebra(std::vector<Matrix> structure);

  std::size_t r() const noexcept { return structure_.size(); }
  std::size_t m() const noexcept { return m_; }
  const Matrix& c(std::size_t k) const { return structure_.at(k); }
  const std::vector<Matrix>& structure() const noexcept { return structure_; }

 private:
  std::size_t m_;
  std::vector<Matrix> structure_;
};

/// Point (x, z) of the group in exponential coordinates.
struct GroupPoint {
  Vector x;
  Vector z;
};

/// Vertical covector theta with its Euclidean norm cached.
class Covector {
 public:
  Covector() = default;
  explicit Covector(Vector theta);

  const Vector& values() const noexcept { return theta_; }
  double norm() const noexcept { return norm_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(theta_.size()); }
  bool is_zero() const noexcept { return norm_ == 0.0; }

 private:
  Vector theta_;
  double norm_ = 0.0;
};

/// Builds integer structure matrices for dimensions (r, m). Throws
/// kInvalidArgument for r < 1 and kNoCliffordModule when d(r) does not
/// divide m.
Algebra build_algebra(std::size_t r, std::size_t m);

/// Largest max-entry residual over skew-symmetry, C^k C^k + Id and
/// C^k C^p + C^p C^k (k != p). Zero means the relations hold exactly.
double verify_relations(const Algebra& alg);

/// [v, w]_k = <C^k v, w>.
Vector bracket(const Algebra& alg, const Vector& v, const Vector& w);

/// J_Z v = (sum_k Z_k C^k) v.
Vector j_map(const Algebra& alg, const Vector& z, const Vector& v);

/// Omega = sum_k theta_k C^k. Satisfies Omega^2 = -|theta|^2 Id.
Matrix omega(const Algebra& alg, const Covector& theta);

/// Same linear combination applied to an arbitrary vertical vector
/// (the matrix written curly-Z for a target z).
Matrix combine(const Algebra& alg, const Vector& coeffs);

void check_point(const Algebra& alg, const GroupPoint& p);

// JSON form {"r": int, "m": int, "C": [[[int]]]}, matrices row-major.
std::string algebra_to_json(const Algebra& alg);
/// Parses and re-verifies; any relation residual > 0 is rejected with
/// kRelationViolation.
Algebra algebra_from_json(const std::string& text);

}  // namespace htype
