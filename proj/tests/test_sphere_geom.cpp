#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "loopbu/sphere_geom.hpp"
#include "support.hpp"

using namespace loopbu;
using loopbu::testing::Rng;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// Point at fraction t of the arc from p to q, located by bisection on the
// angle measured from p.
Vec slerp_by_bisection(const Vec& p, const Vec& q, double t) {
  Vec dir = q - p.dot(q) * p;
  dir.normalize();
  const double total = std::acos(std::clamp(p.dot(q), -1.0, 1.0));
  double lo = 0.0, hi = std::numbers::pi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Vec point = std::cos(mid) * p + std::sin(mid) * dir;
    const double angle = std::acos(std::clamp(point.dot(p), -1.0, 1.0));
    (angle < t * total ? lo : hi) = mid;
  }
  return std::cos(lo) * p + std::sin(lo) * dir;
}

}  // namespace

TEST(Normalize, Examples) {
  EXPECT_TRUE(normalize(v3(0, 0, -2)).coords().isApprox(v3(0, 0, -1)));
  EXPECT_TRUE(normalize(v3(1, 0, 0)).coords().isApprox(v3(1, 0, 0)));
  Vec v(4);
  v << 1, 1, 0, 0;
  Vec expected(4);
  expected << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0, 0;
  EXPECT_LT((normalize(v).coords() - expected).norm(), 1e-15);
}

TEST(Normalize, ZeroIsDegenerate) {
  try {
    normalize(Vec::Zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(SpherePoint, RejectsNonUnit) {
  EXPECT_THROW(SpherePoint::from_unit(v3(1, 1, 0)), Error);
  EXPECT_NO_THROW(SpherePoint::from_unit(v3(1, 0, 0)));
}

TEST(Slerp, QuarterCircleMidpoint) {
  const SpherePoint p = SpherePoint::from_unit(v3(1, 0, 0));
  const SpherePoint q = SpherePoint::from_unit(v3(0, 1, 0));
  const Vec mid = slerp(p, q, 0.5).coords();
  EXPECT_LT((mid - v3(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0)).norm(), 1e-15);
}

TEST(Slerp, IdenticalEndpoints) {
  Rng rng(11);
  const SpherePoint p = SpherePoint::from_unit(rng.unit(4));
  for (double t : {0.0, 0.3, 0.77, 1.0}) {
    EXPECT_LT((slerp(p, p, t).coords() - p.coords()).norm(), 1e-15);
  }
}

TEST(Slerp, PoleToEquatorThird) {
  const SpherePoint p = SpherePoint::from_unit(v3(0, 0, -1));
  const SpherePoint q = SpherePoint::from_unit(v3(1, 0, 0));
  const Vec got = slerp(p, q, 1.0 / 3.0).coords();
  const Vec closed = v3(std::sin(std::numbers::pi / 6), 0, -std::cos(std::numbers::pi / 6));
  EXPECT_LT((got - closed).norm(), 1e-14);
  EXPECT_LT((got - slerp_by_bisection(p.coords(), q.coords(), 1.0 / 3.0)).norm(), 1e-12);
}

TEST(Slerp, AntipodalPairRejected) {
  const SpherePoint p = SpherePoint::from_unit(v3(0, 0, 1));
  try {
    slerp(p, -p, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AntipodalPair);
  }
}

TEST(Slerp, ArcLengthUniformity) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = rng.integer(2, 5);
    const SpherePoint p = SpherePoint::from_unit(rng.unit(dim));
    const SpherePoint q = SpherePoint::from_unit(rng.unit(dim));
    if (angle_between(p.coords(), q.coords()) > std::numbers::pi - 1e-3) continue;
    const double t = rng.uniform();
    const Vec s = slerp(p, q, t).coords();
    EXPECT_NEAR(angle_between(s, p.coords()), t * angle_between(q.coords(), p.coords()), 1e-9);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_LT((s - slerp_by_bisection(p.coords(), q.coords(), t)).norm(), 1e-9);
  }
}

TEST(AngleBetween, StableAtExtremes) {
  const Vec p = v3(1, 0, 0);
  EXPECT_EQ(angle_between(p, p), 0.0);
  EXPECT_NEAR(angle_between(p, -p), std::numbers::pi, 1e-15);
  const Vec q = v3(std::cos(1e-9), std::sin(1e-9), 0);
  EXPECT_NEAR(angle_between(p, q), 1e-9, 1e-20);
}

TEST(Phase, MirrorAndQuarterPointsExact) {
  for (long m : {16L, 64L, 256L, 512L}) {
    for (long i = 0; i <= m; ++i) {
      const Phase a = Phase::of_grid(i, m);
      const Phase b = Phase::of_grid(m - i, m);
      EXPECT_EQ(a.sin, -b.sin);
      EXPECT_EQ(a.cos, b.cos);
    }
    EXPECT_EQ(Phase::of_grid(m / 4, m).sin, 1.0);
    EXPECT_EQ(Phase::of_grid(m / 4, m).cos, 0.0);
    EXPECT_EQ(Phase::of_grid(m / 2, m).cos, -1.0);
  }
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = rng.uniform();
    const Phase p = Phase::of_fraction(t);
    EXPECT_NEAR(p.sin, std::sin(2 * std::numbers::pi * t), 1e-14);
    EXPECT_NEAR(p.cos, std::cos(2 * std::numbers::pi * t), 1e-14);
  }
}

TEST(MeridianArc, Endpoints) {
  const GeodesicArc arc = meridian_arc(SpherePoint::from_unit(v3(1, 0, 0)));
  EXPECT_LT((arc.point_at(0) - v3(0, 0, -1)).norm(), 1e-15);
  EXPECT_LT((arc.point_at(1) - v3(1, 0, 0)).norm(), 1e-15);
}

TEST(MeridianArc, Midpoint) {
  const GeodesicArc arc = meridian_arc(SpherePoint::from_unit(v3(0, 1, 0)));
  const double c = std::numbers::pi / 4;
  EXPECT_LT((arc.point_at(0.5) - v3(0, std::sin(c), -std::cos(c))).norm(), 1e-15);
}

TEST(MeridianArc, NorthPoleIsDegenerate) {
  try {
    meridian_arc(SpherePoint::from_unit(v3(0, 0, 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(MeridianArc, EndsAtEquatorialPoint) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(1, 4);
    const SpherePoint x = SpherePoint::from_unit(rng.equatorial(n));
    EXPECT_LT((meridian_arc(x).point_at(1) - x.coords()).norm(), 1e-12);
  }
}

TEST(CircleAlpha, Examples) {
  const SpherePoint x = SpherePoint::from_unit(v3(0.6, 0.8, 0));
  EXPECT_EQ(circle_alpha(x, 0.0), v3(0, 0, -1));
  EXPECT_LT((circle_alpha(x, 0.25) - x.coords()).norm(), 1e-15);
  EXPECT_LT((circle_alpha(x, 0.75) + x.coords()).norm(), 1e-15);
}

TEST(CircleAlpha, EquivarianceAndUnitNorm) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(1, 4);
    const SpherePoint x = SpherePoint::from_unit(rng.equatorial(n));
    const double t = rng.uniform();
    EXPECT_LT((circle_alpha(-x, t) - circle_alpha(x, 1 - t)).norm(), 1e-12);
    EXPECT_NEAR(circle_alpha(x, t).norm(), 1.0, 1e-9);
  }
}

TEST(CircleBeta, Examples) {
  const SpherePoint s1 = equator_base(2);
  const SpherePoint x = SpherePoint::from_unit(v3(0, 1, 0));
  EXPECT_LT((circle_beta(x, s1, 0.0) - s1.coords()).norm(), 1e-15);
  EXPECT_LT((circle_beta(x, s1, 0.5) - x.coords()).norm(), 1e-12);
  const Vec through_pole = circle_beta(-s1, s1, 0.25);
  EXPECT_LT((through_pole - v3(0, 0, -1)).norm(), 1e-12);
  EXPECT_NEAR(through_pole.norm(), 1.0, 1e-12);
}

TEST(CircleBeta, PassesSouthFirstAndStaysOnSphere) {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 4);
    const SpherePoint s1 = equator_base(n);
    Vec raw = rng.equatorial(n);
    if ((raw - s1.coords()).norm() < 1e-2) continue;
    const SpherePoint x = SpherePoint::from_unit(raw);
    EXPECT_LT(circle_beta(x, s1, 0.25)[n], 0.0);
    EXPECT_NEAR(circle_beta(x, s1, rng.uniform()).norm(), 1.0, 1e-9);
  }
}

TEST(CircleBeta, ConstantAngularSpeed) {
  const SpherePoint s1 = equator_base(2);
  const SpherePoint x = SpherePoint::from_unit(v3(0.3, std::sqrt(1 - 0.09), 0));
  const int steps = 64;
  const double first = angle_between(circle_beta(x, s1, 0.0), circle_beta(x, s1, 1.0 / steps));
  for (int i = 1; i < steps; ++i) {
    const double step = angle_between(circle_beta(x, s1, double(i) / steps),
                                      circle_beta(x, s1, double(i + 1) / steps));
    EXPECT_NEAR(step, first, 1e-12);
  }
}

TEST(Rotation, DefiningProperties) {
  Rng rng(17);
  for (int n : {1, 2, 3, 5}) {
    const SpherePoint s1 = equator_base(n);
    const Mat r = rotation_to_base(s1);
    EXPECT_LT((r * s1.coords() - south_pole(n).coords()).norm(), 1e-12);
    EXPECT_LT((r.transpose() * r - Mat::Identity(n + 1, n + 1)).norm(), 1e-12);
    Vec w = rng.gaussian(n + 1);
    w[0] = 0;
    w[n] = 0;
    EXPECT_LT((r * w - w).norm(), 1e-12);
  }
}
