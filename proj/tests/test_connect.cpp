// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "htype/connect.hpp"
#include "htype/numeric.hpp"
#include "test_support.hpp"

using namespace htype;
using htype::testing::random_vector;
using htype::testing::uniform;
using htype::testing::unit_vector;
using std::numbers::pi;

namespace {

GroupPoint scaled_target(std::mt19937_64& rng, const Algebra& alg, double xn, double zn) {
  return {unit_vector(rng, alg.m()) * xn, unit_vector(rng, alg.r()) * zn};
}

// Independent root count: sign changes of mu(a) - target on a uniform grid.
// mu -> +inf on both sides of every pole past the first, so crossing a pole
// never produces a spurious change.
std::vector<double> sign_scan(double target, double cap, int points) {
  std::vector<double> crossings;
  double prev_a = 0.0;
  double prev_f = -target;
  for (int i = 1; i < points; ++i) {
    const double a = cap * i / points;
    const double k = std::round(a / pi);
    if (k != 0 && std::abs(a - k * pi) < 1e-9) continue;
    const double s = std::sin(a);
    const double f = a / (s * s) - std::cos(a) / s - target;
    if ((f > 0) != (prev_f > 0)) crossings.push_back(0.5 * (a + prev_a));
    prev_a = a;
    prev_f = f;
  }
  return crossings;
}

}  // namespace

TEST_CASE("mu reference values") {
  CHECK(mu(0.0) == 0.0);
  CHECK(std::abs(mu(pi / 2) - pi / 2) <= 1e-15);
  // 40-digit references.
  CHECK(mu(1e-4) == doctest::Approx(6.6666666755555555683e-5).epsilon(1e-15));
  CHECK(mu(1e-9) == doctest::Approx(6.6666666666666666676e-10).epsilon(1e-15));
  CHECK(mu(0.3) == doctest::Approx(0.20243123168286831492).epsilon(1e-15));
  CHECK(mu(2.5) == doctest::Approx(8.3185951568346705653).epsilon(1e-14));
  CHECK(mu(-0.7) == doctest::Approx(-mu(0.7)).epsilon(1e-15));
  CHECK(mu(0.5) < mu(1.0));
  CHECK(mu(1.0) < mu(1.5));
  CHECK_THROWS_AS(mu(pi), Error);
  CHECK_THROWS_AS(mu(2.0 * pi), Error);
  CHECK_THROWS_AS(mu(NAN), Error);
  CHECK_NOTHROW(mu(pi - 1e-6));
}

TEST_CASE("mu is increasing on (0, pi)") {
  double prev = mu(1e-6);
  for (int i = 1; i < 10000; ++i) {
    const double a = pi * i / 10000.0;
    const double v = mu(a);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("nu reference values") {
  CHECK(nu(0.0) == 1.0);
  CHECK(std::abs(nu(2.0 * pi) - pi) <= 1e-12);
  CHECK(nu(1e-4) == doctest::Approx(0.9999666686110351885).epsilon(1e-15));
  CHECK(nu(pi) == doctest::Approx(pi * pi / (2.0 * (2.0 + pi))).epsilon(1e-15));
  CHECK(nu(0.3) == doctest::Approx(0.91568934406421577606).epsilon(1e-15));
  CHECK_THROWS_AS(nu(-0.1), Error);
}

TEST_CASE("nu separates the first branch from the later ones") {
  // nu <= pi on [0, 2 pi] and nu >= pi beyond, with equality only at 2 pi.
  // (On [0, pi) vs (pi, inf) the ordering fails: nu(0.1) > nu(pi).)
  CHECK(nu(0.1) > nu(pi));
  for (int i = 0; i < 4000; ++i) {
    const double x = 2.0 * pi * i / 4000.0;
    const double y = 2.0 * pi + 0.01 + 60.0 * i / 4000.0;
    CHECK(nu(x) < pi);
    CHECK(nu(y) > pi);
  }
}

TEST_CASE("nu o mu identity links the two length formulas") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    double t = uniform(rng, 0.01, 16.0 * pi);
    if (std::abs(std::remainder(t, 2.0 * pi)) < 1e-3) continue;
    const double lhs = (2.0 - 2.0 * std::cos(t)) * (1.0 + mu(0.5 * t));
    const double rhs = 2.0 * (1.0 + t - std::cos(t) - std::sin(t));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("solve_mu inverts the forward map") {
  const RootSet half_pi = solve_mu(pi / 2, pi);
  REQUIRE(half_pi.roots.size() == 1);
  CHECK(half_pi.roots[0].theta_norm == doctest::Approx(pi).epsilon(1e-15));

  const RootSet small = solve_mu(mu(0.3), pi);
  REQUIRE(small.roots.size() == 1);
  CHECK(std::abs(small.roots[0].theta_norm / 2 - 0.3) <= 1e-10);

  CHECK_THROWS_AS(solve_mu(0.0), Error);
  CHECK_THROWS_AS(solve_mu(-1.0), Error);
  CHECK_THROWS_AS(solve_mu(10.0, 0.1), Error);
  CHECK_THROWS_AS(solve_mu(1.0, 0.0), Error);
}

TEST_CASE("solve_mu matches a brute-force sign scan") {
  for (double target : {10.0, 3.0, 25.0, 40.0, 0.01, 7.5}) {
    CAPTURE(target);
    const double cap = 8.0 * pi;
    const RootSet set = solve_mu(target, cap);
    const std::vector<double> scan = sign_scan(target, cap, 100000);
    REQUIRE(set.roots.size() == scan.size());
    for (std::size_t i = 0; i < scan.size(); ++i)
      CHECK(std::abs(set.roots[i].theta_norm / 2 - scan[i]) <= 2.0 * cap / 100000);
  }
  // mu(10) has roots past the first interval wherever the interval minimum is below 10.
  CHECK(solve_mu(10.0).roots.size() > 1);
}

TEST_CASE("RootSet invariants over random targets") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const double target = std::exp(uniform(rng, -6.0, 5.0));
    const RootSet set = solve_mu(target);
    REQUIRE(!set.roots.empty());
    CHECK(set.roots[0].theta_norm < 2.0 * pi);
    for (std::size_t k = 0; k < set.roots.size(); ++k) {
      const auto& root = set.roots[k];
      CHECK(std::abs(mu(root.theta_norm / 2) - target) <= 1e-12 * std::max(1.0, target));
      CHECK(std::abs(root.residual) <= 1e-12 * std::max(1.0, target));
      if (k > 0) {
        CHECK(root.theta_norm > 2.0 * pi);
        CHECK(root.theta_norm > set.roots[k - 1].theta_norm);
      }
    }
  }
}

TEST_CASE("truncated cap keeps roots below it") {
  const double cap = 2.5 * pi;
  const RootSet set = solve_mu(20.0, cap);
  for (const auto& r : set.roots) CHECK(r.theta_norm / 2 < cap);
  CHECK(set.roots.size() == sign_scan(20.0, cap, 100000).size());
}

TEST_CASE("vertical family") {
  std::mt19937_64 rng(10);
  const Algebra alg = build_algebra(3, 4);
  const Vector z = unit_vector(rng, 3);
  const Vector d = unit_vector(rng, 4);
  const auto family = connect_vertical(alg, z, 5, d);
  REQUIRE(family.size() == 5);
  for (int k = 1; k <= 5; ++k) {
    const auto& g = family[static_cast<std::size_t>(k - 1)];
    CHECK(g.branch == k);
    CHECK(std::abs(g.length * g.length - 4.0 * k * pi) <= 1e-12);
    CHECK(g.spec.theta.norm() == doctest::Approx(2.0 * k * pi).epsilon(1e-15));
    const GeodesicSample end = eval_geodesic(alg, g.spec, 1.0);
    CHECK(end.point.x.norm() <= 1e-12);
    CHECK((end.point.z - z).norm() <= 1e-12);
  }
  const auto opposite = connect_vertical(alg, z, 1, -d);
  CHECK((opposite[0].spec.xdot0 - family[0].spec.xdot0).norm() > 1.0);
  CHECK(opposite[0].length == family[0].length);
  const GeodesicSample mid_a = eval_geodesic(alg, family[0].spec, 0.5);
  const GeodesicSample mid_b = eval_geodesic(alg, opposite[0].spec, 0.5);
  CHECK((mid_a.point.x - mid_b.point.x).norm() > 0.1);

  CHECK_THROWS_AS(connect_vertical(alg, Vector::Zero(3), 1, d), Error);
  CHECK_THROWS_AS(connect_vertical(alg, z, 1, 2.0 * d), Error);
  CHECK_THROWS_AS(connect_vertical(alg, z, 0, d), Error);
}

TEST_CASE("generic Heisenberg target at mu = pi/2") {
  const Algebra alg = build_algebra(1, 2);
  // 4|z| / |x|^2 = pi / 2 with |x| = 1.
  const GroupPoint target{Vector::Unit(2, 0), Vector::Constant(1, pi / 8)};
  const ConnectionResult res = connect_generic(alg, target);
  REQUIRE(!res.geodesics.empty());
  CHECK(res.roots.roots[0].theta_norm == doctest::Approx(pi).epsilon(1e-14));
  const double l1 = res.geodesics[0].length;
  CHECK(l1 * l1 == doctest::Approx(pi * pi / (2.0 * (2.0 + pi)) * (1.0 + pi / 2)).epsilon(1e-13));
  CHECK(l1 * l1 == doctest::Approx(pi * pi / 4).epsilon(1e-13));
  CHECK(res.distance == l1);
  CHECK(res.minimizer_indices == std::vector<std::size_t>{0});
  CHECK_FALSE(res.in_cut_locus);
}

TEST_CASE("generic connections: endpoints, lengths and minimality") {
  std::mt19937_64 rng(12);
  for (auto [r, m] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 4}, {3, 8}, {7, 8}}) {
    const Algebra alg = build_algebra(r, m);
    for (int trial = 0; trial < 10; ++trial) {
      const GroupPoint target = scaled_target(rng, alg, uniform(rng, 0.1, 3.0), uniform(rng, 0.1, 3.0));
      const ConnectionResult res = connect_generic(alg, target);
      const double xn2 = target.x.squaredNorm();
      const double zn = target.z.norm();
      REQUIRE(res.geodesics.size() == res.roots.roots.size());
      for (std::size_t k = 0; k < res.geodesics.size(); ++k) {
        const auto& g = res.geodesics[k];
        const GeodesicSample end = eval_geodesic(alg, g.spec, 1.0);
        CHECK((end.point.x - target.x).norm() <= 1e-9);
        CHECK((end.point.z - target.z).norm() <= 1e-9);
        const double tn = g.spec.theta.norm();
        CHECK(std::abs(g.length * g.length - nu(tn) * (xn2 + 4.0 * zn)) <= 1e-9 * std::max(1.0, g.length * g.length));
        // theta is a positive multiple of z.
        CHECK(g.spec.theta.values().dot(target.z) == doctest::Approx(tn * zn).epsilon(1e-12));
        // Speed^2 = |x|^2 |theta|^2 / (2 - 2 cos|theta|), constant in t.
        const double speed2 = xn2 * tn * tn / (2.0 - 2.0 * std::cos(tn));
        for (double t : {0.0, 0.3, 0.77, 1.0}) {
          const double v2 = eval_geodesic(alg, g.spec, t).velocity_x.squaredNorm();
          CHECK(std::abs(v2 - speed2) <= 1e-10 * std::max(1.0, speed2));
        }
        if (k > 0) CHECK(g.length > res.geodesics[0].length);
      }
      CHECK(res.minimizer_indices == std::vector<std::size_t>{0});
      CHECK_FALSE(res.in_cut_locus);
    }
  }
}

TEST_CASE("matrix trig identity behind the initial-velocity reconstruction") {
  std::mt19937_64 rng(13);
  const Algebra alg = build_algebra(3, 8);
  const Matrix id = Matrix::Identity(8, 8);
  int done = 0;
  while (done < 50) {
    const double tn = uniform(rng, 0.1, 4.0 * pi);
    if (std::abs(std::remainder(tn, 2.0 * pi)) < 1e-3) continue;
    const Matrix om = omega(alg, Covector(unit_vector(rng, 3) * tn));
    const Matrix inv = 0.5 * tn * std::cos(0.5 * tn) / std::sin(0.5 * tn) * id - 0.5 * om;
    const Matrix fwd = std::sin(tn) / tn * id + (1.0 - std::cos(tn)) / (tn * tn) * om;
    CHECK(htype::testing::max_abs(inv * fwd - id) <= 1e-12);
    ++done;
  }
}

TEST_CASE("endpoint round trip from random geodesics") {
  std::mt19937_64 rng(14);
  const Algebra alg = build_algebra(2, 4);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const double tn = uniform(rng, 0.1, 12.0);
    if (std::abs(std::remainder(tn, 2.0 * pi)) < 0.05) continue;
    const GeodesicSpec spec{unit_vector(rng, 4) * uniform(rng, 0.3, 2.0), Covector(unit_vector(rng, 2) * tn)};
    const GroupPoint end = eval_geodesic(alg, spec, 1.0).point;
    REQUIRE(classify_target(end) == TargetClass::kGeneric);
    const ConnectionResult res = classify(alg, end);
    bool found = false;
    for (const auto& g : res.geodesics) {
      if (std::abs(g.spec.theta.norm() - tn) <= 1e-8 && (g.spec.xdot0 - spec.xdot0).norm() <= 1e-8 &&
          (g.spec.theta.values() - spec.theta.values()).norm() <= 1e-8)
        found = true;
    }
    CHECK(found);
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("minimality over a target grid") {
  const Algebra alg = build_algebra(1, 2);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const double xn = 0.1 + 2.9 * i / 11.0;
      const double zn = 0.1 + 2.9 * j / 11.0;
      const GroupPoint target{Vector::Unit(2, 0) * xn, Vector::Constant(1, zn)};
      const ConnectionResult res = connect_generic(alg, target);
      std::size_t best = 0;
      for (std::size_t k = 1; k < res.geodesics.size(); ++k)
        if (res.geodesics[k].length < res.geodesics[best].length) best = k;
      CHECK(best == 0);
    }
}

TEST_CASE("horizontal targets") {
  const Algebra alg = build_algebra(2, 4);
  const ConnectionResult res = connect_horizontal(alg, Vector::Unit(4, 0));
  REQUIRE(res.geodesics.size() == 1);
  CHECK(res.distance == 1.0);
  CHECK(res.geodesics[0].spec.theta.is_zero());
  CHECK_FALSE(res.in_cut_locus);
  const GeodesicSample half = eval_geodesic(alg, res.geodesics[0].spec, 0.5);
  CHECK(half.point.x == 0.5 * Vector::Unit(4, 0));

  Vector x(4);
  x << 0.3, -1.0, 2.0, 0.1;
  CHECK(connect_horizontal(alg, 2.0 * x).distance == doctest::Approx(2.0 * x.norm()));
  CHECK_THROWS_AS(connect_horizontal(alg, Vector::Zero(4)), Error);

  // No nontrivial covector returns to z = 0: |z(1)| is proportional to 1 - sin|th|/|th|.
  for (int i = 1; i <= 10000; ++i) {
    const double tn = 4.0 * pi * i / 10000.0;
    CHECK(1.0 - sinc_like(tn) > 0.0);
  }
}

TEST_CASE("classify dispatch and cut-locus verdicts") {
  const Algebra alg = build_algebra(1, 2);
  const ConnectionResult vertical = classify(alg, {Vector::Zero(2), Vector::Constant(1, 1.0)});
  CHECK(vertical.target_class == TargetClass::kVertical);
  CHECK(vertical.in_cut_locus);
  CHECK(vertical.multiplicity == Multiplicity::kSphereFamily);
  CHECK(vertical.distance * vertical.distance == doctest::Approx(4.0 * pi).epsilon(1e-14));
  CHECK(vertical.minimizer_indices.size() >= 3);

  const ConnectionResult horizontal = classify(alg, {Vector::Unit(2, 1), Vector::Zero(1)});
  CHECK(horizontal.target_class == TargetClass::kHorizontal);
  CHECK_FALSE(horizontal.in_cut_locus);
  CHECK(horizontal.geodesics.size() == 1);

  const ConnectionResult generic = classify(alg, {Vector::Unit(2, 1), Vector::Constant(1, -0.4)});
  CHECK(generic.target_class == TargetClass::kGeneric);
  CHECK_FALSE(generic.in_cut_locus);

  const ConnectionResult origin = classify(alg, {Vector::Zero(2), Vector::Zero(1)});
  CHECK(origin.target_class == TargetClass::kOrigin);
  CHECK(origin.distance == 0.0);
  CHECK_FALSE(origin.in_cut_locus);
  CHECK(origin.geodesics.empty());
}

TEST_CASE("vertical minimizers form a family of equal length") {
  std::mt19937_64 rng(15);
  const Algebra alg = build_algebra(3, 8);
  const Vector z = random_vector(rng, 3);
  const ConnectionResult res = classify(alg, {Vector::Zero(8), z});
  std::vector<Vector> directions;
  for (std::size_t i : res.minimizer_indices) {
    const auto& g = res.geodesics[i];
    CHECK(g.length == doctest::Approx(std::sqrt(4.0 * pi * z.norm())).epsilon(1e-14));
    const GeodesicSample end = eval_geodesic(alg, g.spec, 1.0);
    CHECK(end.point.x.norm() <= 1e-12);
    CHECK((end.point.z - z).norm() <= 1e-12);
    directions.push_back(g.spec.xdot0.normalized());
  }
  REQUIRE(directions.size() >= 3);
  for (std::size_t a = 0; a < directions.size(); ++a)
    for (std::size_t b = a + 1; b < directions.size(); ++b) CHECK((directions[a] - directions[b]).norm() > 0.5);
  // Higher branches are longer.
  for (const auto& g : res.geodesics)
    if (g.branch > 1) CHECK_FALSE(g.is_minimizer);
}

TEST_CASE("classification bands scale with the dilation weights") {
  CHECK(classify_target({Vector::Zero(2), Vector::Zero(1)}) == TargetClass::kOrigin);
  CHECK(classify_target({Vector::Constant(2, 1e-15), Vector::Constant(1, 1.0)}) == TargetClass::kVertical);
  CHECK(classify_target({Vector::Constant(2, 1e-9), Vector::Constant(1, 1.0)}) == TargetClass::kGeneric);
  CHECK(classify_target({Vector::Unit(2, 0), Vector::Constant(1, 1e-13)}) == TargetClass::kHorizontal);
  CHECK(classify_target({Vector::Unit(2, 0) * 1e-6, Vector::Constant(1, 1e-13)}) == TargetClass::kGeneric);
}

TEST_CASE("connection JSON round trip re-validates") {
  const Algebra alg = build_algebra(2, 4);
  std::mt19937_64 rng(16);
  const std::vector<GroupPoint> targets = {
      {Vector::Zero(4), Vector::Unit(2, 1) * 0.7},
      {Vector::Unit(4, 2) * 1.5, Vector::Zero(2)},
      scaled_target(rng, alg, 1.2, 2.0),
      {Vector::Zero(4), Vector::Zero(2)},
  };
  for (const GroupPoint& t : targets) {
    const ConnectionResult res = classify(alg, t);
    const std::string text = connection_to_json(res);
    const ConnectionResult back = connection_from_json(alg, text);
    CHECK(back.target_class == res.target_class);
    CHECK(back.distance == res.distance);
    CHECK(back.in_cut_locus == res.in_cut_locus);
    CHECK(back.geodesics.size() == res.geodesics.size());
    CHECK(back.minimizer_indices == res.minimizer_indices);
  }

  const ConnectionResult res = classify(alg, targets[2]);
  std::string text = connection_to_json(res);
  const auto pos = text.find("\"in_cut_locus\":false");
  REQUIRE(pos != std::string::npos);
  std::string tampered = text;
  tampered.replace(pos, 20, "\"in_cut_locus\":true ");
  CHECK_THROWS_AS(connection_from_json(alg, tampered), Error);
  CHECK_THROWS_AS(connection_from_json(alg, "{\"target\":1}"), Error);
  CHECK_THROWS_AS(connection_from_json(build_algebra(1, 2), text), Error);
}
