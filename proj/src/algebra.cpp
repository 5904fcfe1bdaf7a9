// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#include "htype/algebra.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <string_view>

namespace htype {
namespace {

// Kronecker words over the 2x2 blocks E = Id, J = rotation, K = swap,
// L = reflection. Each table lists mutually anticommuting skew matrices
// squaring to -Id at the minimal dimension for that many generators.
constexpr std::array<std::string_view, 1> kWords2 = {"J"};
constexpr std::array<std::string_view, 3> kWords4 = {"EJ", "JK", "JL"};
constexpr std::array<std::string_view, 7> kWords8 = {"EEJ", "EJK", "JEL", "JKK",
                                                     "JLK", "KJL", "LJL"};
constexpr std::array<std::string_view, 8> kWords16 = {"EEEJ", "EEJK", "EJEL", "EJKK",
                                                      "EJLK", "EKJL", "KLJL", "LLJL"};

Matrix block(char c) {
  Matrix b(2, 2);
  switch (c) {
    case 'E': b << 1, 0, 0, 1; break;
    case 'J': b << 0, -1, 1, 0; break;
    case 'K': b << 0, 1, 1, 0; break;
    case 'L': b << 1, 0, 0, -1; break;
    default: throw Error(ErrorCode::kInvalidArgument, "bad Kronecker letter");
  }
  return b;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix from_word(std::string_view word) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : word) out = kron(out, block(c));
  return out;
}

template <std::size_t N>
std::vector<Matrix> from_words(const std::array<std::string_view, N>& words, std::size_t r) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < r; ++k) out.push_back(from_word(words[k]));
  return out;
}

// Minimal irreducible family of r generators.
std::vector<Matrix> minimal_family(std::size_t r) {
  if (r <= 1) return from_words(kWords2, r);
  if (r <= 3) return from_words(kWords4, r);
  if (r <= 7) return from_words(kWords8, r);
  if (r == 8) return from_words(kWords16, r);

  // Period eight: B_j (x) Id for the eight 16x16 generators, then
  // w (x) A_i where w = B_1...B_8 is symmetric, squares to Id and
  // anticommutes with every B_j.
  const std::vector<Matrix> base = from_words(kWords16, 8);
  const std::vector<Matrix> rest = minimal_family(r - 8);
  const auto inner = static_cast<Eigen::Index>(rest.front().rows());
  Matrix w = Matrix::Identity(16, 16);
  for (const Matrix& b : base) w = w * b;

  std::vector<Matrix> out;
  out.reserve(r);
  for (const Matrix& b : base) out.push_back(kron(b, Matrix::Identity(inner, inner)));
  for (const Matrix& a : rest) out.push_back(kron(w, a));
  return out;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

void require_size(const Vector& v, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(v.size()) != n)
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                    std::to_string(v.size()));
}

}  // namespace

std::size_t min_module_dim(std::size_t r) {
  static constexpr std::array<std::size_t, 8> kBase = {2, 4, 4, 8, 8, 8, 8, 16};
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "r must be at least 1");
  std::size_t scale = 1;
  while (r > 8) {
    r -= 8;
    scale *= 16;
  }
  return scale * kBase[r - 1];
}

Algebra::Algebra(std::vector<Matrix> structure) : m_(0), structure_(std::move(structure)) {
  if (structure_.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one structure matrix");
  m_ = static_cast<std::size_t>(structure_.front().rows());
  for (const Matrix& c : structure_) {
    if (static_cast<std::size_t>(c.rows()) != m_ || static_cast<std::size_t>(c.cols()) != m_)
      throw Error(ErrorCode::kDimensionMismatch, "structure matrices must all be m x m");
  }
}

Covector::Covector(Vector theta) : theta_(std::move(theta)), norm_(theta_.norm()) {
  if (!theta_.allFinite()) throw Error(ErrorCode::kInvalidArgument, "covector has non-finite entries");
}

Algebra build_algebra(std::size_t r, std::size_t m) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "r must be at least 1");
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be at least 1");
  const std::size_t d = min_module_dim(r);
  if (m % d != 0)
    throw Error(ErrorCode::kNoCliffordModule,
                "no Clifford module of dimension " + std::to_string(m) + " for r=" +
                    std::to_string(r) + ": m must be a multiple of d(" + std::to_string(r) +
                    ")=" + std::to_string(d));

  const std::vector<Matrix> minimal = minimal_family(r);
  const auto copies = static_cast<Eigen::Index>(m / d);
  std::vector<Matrix> structure;
  structure.reserve(r);
  for (const Matrix& c : minimal) structure.push_back(kron(Matrix::Identity(copies, copies), c));

  Algebra alg(std::move(structure));
  if (verify_relations(alg) != 0.0)
    throw Error(ErrorCode::kRelationViolation, "constructed family violates the Clifford relations");
  return alg;
}

double verify_relations(const Algebra& alg) {
  const auto m = static_cast<Eigen::Index>(alg.m());
  const Matrix id = Matrix::Identity(m, m);
  double worst = 0.0;
  for (std::size_t k = 0; k < alg.r(); ++k) {
    const Matrix& ck = alg.c(k);
    worst = std::max(worst, max_abs(ck.transpose() + ck));
    worst = std::max(worst, max_abs(ck * ck + id));
    for (std::size_t p = k + 1; p < alg.r(); ++p) {
      const Matrix& cp = alg.c(p);
      worst = std::max(worst, max_abs(ck * cp + cp * ck));
    }
  }
  return worst;
}

Vector bracket(const Algebra& alg, const Vector& v, const Vector& w) {
  require_size(v, alg.m(), "bracket lhs");
  require_size(w, alg.m(), "bracket rhs");
  Vector out(static_cast<Eigen::Index>(alg.r()));
  for (std::size_t k = 0; k < alg.r(); ++k)
    out(static_cast<Eigen::Index>(k)) = w.dot(alg.c(k) * v);
  return out;
}

Matrix combine(const Algebra& alg, const Vector& coeffs) {
  require_size(coeffs, alg.r(), "vertical coefficients");
  const auto m = static_cast<Eigen::Index>(alg.m());
  Matrix out = Matrix::Zero(m, m);
  for (std::size_t k = 0; k < alg.r(); ++k) {
    const double a = coeffs(static_cast<Eigen::Index>(k));
    if (a != 0.0) out += a * alg.c(k);
  }
  return out;
}

Vector j_map(const Algebra& alg, const Vector& z, const Vector& v) {
  require_size(v, alg.m(), "j_map vector");
  return combine(alg, z) * v;
}

Matrix omega(const Algebra& alg, const Covector& theta) { return combine(alg, theta.values()); }

void check_point(const Algebra& alg, const GroupPoint& p) {
  require_size(p.x, alg.m(), "horizontal part");
  require_size(p.z, alg.r(), "vertical part");
  if (!p.x.allFinite() || !p.z.allFinite())
    throw Error(ErrorCode::kInvalidArgument, "group point has non-finite entries");
}

std::string algebra_to_json(const Algebra& alg) {
  nlohmann::json c = nlohmann::json::array();
  for (const Matrix& ck : alg.structure()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < ck.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < ck.cols(); ++j) row.push_back(static_cast<long long>(std::lround(ck(i, j))));
      rows.push_back(std::move(row));
    }
    c.push_back(std::move(rows));
  }
  nlohmann::json doc = {{"r", alg.r()}, {"m", alg.m()}, {"C", std::move(c)}};
  return doc.dump();
}

Algebra algebra_from_json(const std::string& text) {
  std::vector<Matrix> structure;
  std::size_t r = 0;
  std::size_t m = 0;
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    r = doc.at("r").get<std::size_t>();
    m = doc.at("m").get<std::size_t>();
    const auto& c = doc.at("C");
    if (!c.is_array() || c.size() != r)
      throw Error(ErrorCode::kParse, "\"C\" must hold r matrices");
    for (const auto& mat : c) {
      if (!mat.is_array() || mat.size() != m) throw Error(ErrorCode::kParse, "each matrix must have m rows");
      Matrix ck(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i) {
        const auto& row = mat[i];
        if (!row.is_array() || row.size() != m) throw Error(ErrorCode::kParse, "each row must have m entries");
        for (std::size_t j = 0; j < m; ++j)
          ck(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
      }
      structure.push_back(std::move(ck));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("algebra JSON: ") + e.what());
  }
  if (r < 1 || m < 1) throw Error(ErrorCode::kParse, "algebra JSON: r and m must be positive");

  Algebra alg(std::move(structure));
  const double violation = verify_relations(alg);
  if (violation > 0.0)
    throw Error(ErrorCode::kRelationViolation,
                "algebra JSON violates the Clifford relations (max residual " +
                    std::to_string(violation) + ")");
  return alg;
}

}  // namespace htype
