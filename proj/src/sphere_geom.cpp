#include "loopbu/sphere_geom.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace loopbu {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec basis_vector(Eigen::Index dim, Eigen::Index i) {
  Vec e = Vec::Zero(dim);
  e[i] = 1.0;
  return e;
}

}  // namespace

SpherePoint SpherePoint::from_unit(Vec v) {
  if (v.size() < 2) {
    throw Error(ErrorCode::DegenerateInput, "sphere points need at least 2 ambient coordinates");
  }
  const double norm = v.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitTol) {
    std::ostringstream msg;
    msg << "expected a unit vector, got norm " << norm;
    throw Error(ErrorCode::DegenerateInput, msg.str());
  }
  return SpherePoint(std::move(v));
}

SpherePoint normalize(const Vec& v) {
  const double norm = v.norm();
  if (!(norm > 1e-12) || !std::isfinite(norm)) {
    throw Error(ErrorCode::DegenerateInput, "cannot normalize a (near) zero vector");
  }
  return SpherePoint::from_unit(v / norm);
}

SpherePoint south_pole(int n) {
  if (n < 1) throw Error(ErrorCode::DegenerateInput, "sphere dimension must be >= 1");
  Vec v = Vec::Zero(n + 1);
  v[n] = -1.0;
  return SpherePoint::from_unit(std::move(v));
}

SpherePoint equator_base(int n) {
  if (n < 1) throw Error(ErrorCode::DegenerateInput, "sphere dimension must be >= 1");
  return SpherePoint::from_unit(basis_vector(n + 1, 0));
}

bool is_equatorial(const Vec& v, double tol) {
  return v.size() >= 2 && std::abs(v[v.size() - 1]) <= tol && std::abs(v.norm() - 1.0) <= tol;
}

double angle_between(const Vec& p, const Vec& q) {
  return 2.0 * std::atan2((p - q).norm(), (p + q).norm());
}

SpherePoint slerp(const SpherePoint& p, const SpherePoint& q, double t) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw Error(ErrorCode::DegenerateInput, "slerp endpoints live in different dimensions");
  }
  const double theta = angle_between(p.coords(), q.coords());
  if (theta > std::numbers::pi - kAntipodalGuard) {
    throw Error(ErrorCode::AntipodalPair, "slerp between (near) antipodal points is not unique");
  }
  if (theta == 0.0) return p;
  if (theta < 1e-8) {
    return normalize((1.0 - t) * p.coords() + t * q.coords());
  }
  const double s = std::sin(theta);
  return SpherePoint::from_unit(std::sin((1.0 - t) * theta) / s * p.coords() +
                                std::sin(t * theta) / s * q.coords());
}

Phase Phase::of_fraction(double t) {
  const double r = t - std::floor(t);
  if (r == 0.0) return {0.0, 1.0};
  if (r == 0.25) return {1.0, 0.0};
  if (r == 0.5) return {0.0, -1.0};
  if (r == 0.75) return {-1.0, 0.0};
  if (r > 0.5) return of_fraction(1.0 - r).mirrored();
  return {std::sin(kTwoPi * r), std::cos(kTwoPi * r)};
}

Phase Phase::of_grid(long i, long m) {
  const long k = ((i % m) + m) % m;
  if (k == 0) return {0.0, 1.0};
  if (4 * k == m) return {1.0, 0.0};
  if (2 * k == m) return {0.0, -1.0};
  if (4 * k == 3 * m) return {-1.0, 0.0};
  if (2 * k > m) return of_grid(m - k, m).mirrored();
  const double t = static_cast<double>(k) / static_cast<double>(m);
  return {std::sin(kTwoPi * t), std::cos(kTwoPi * t)};
}

GeodesicArc GeodesicArc::make(const SpherePoint& start, const SpherePoint& direction,
                              double angular_length) {
  if (start.ambient_dim() != direction.ambient_dim()) {
    throw Error(ErrorCode::DegenerateInput, "arc start and direction differ in dimension");
  }
  if (std::abs(start.coords().dot(direction.coords())) > kUnitTol) {
    throw Error(ErrorCode::DegenerateInput, "arc direction must be orthogonal to its start");
  }
  if (!(angular_length > 0.0) || angular_length > std::numbers::pi) {
    throw Error(ErrorCode::DegenerateInput, "arc angular length must lie in (0, pi]");
  }
  return GeodesicArc(start, direction, angular_length);
}

Vec GeodesicArc::point_at(double u) const {
  const double a = u * length_;
  return std::cos(a) * start_.coords() + std::sin(a) * direction_.coords();
}

GeodesicArc meridian_arc(const SpherePoint& x) {
  if (!is_equatorial(x.coords())) {
    throw Error(ErrorCode::DegenerateInput, "meridian arcs end on the equator");
  }
  return GeodesicArc::make(south_pole(x.sphere_dim()), x, std::numbers::pi / 2.0);
}

Vec circle_alpha(const SpherePoint& x, Phase phase) {
  if (!is_equatorial(x.coords())) {
    throw Error(ErrorCode::DegenerateInput, "circle_alpha needs an equatorial point");
  }
  Vec p = phase.sin * x.coords();
  p[p.size() - 1] -= phase.cos;
  return p;
}

Vec circle_alpha(const SpherePoint& x, double t) { return circle_alpha(x, Phase::of_fraction(t)); }

Vec vertical_circle(const SpherePoint& base, const SpherePoint& x, Phase phase) {
  if (base.ambient_dim() != x.ambient_dim()) {
    throw Error(ErrorCode::DegenerateInput, "circle points differ in dimension");
  }
  if (!is_equatorial(x.coords())) {
    throw Error(ErrorCode::DegenerateInput, "the circle must pass through an equatorial point");
  }
  if (angle_between(base.coords(), x.coords()) <= kAntipodalGuard) {
    throw Error(ErrorCode::DegenerateCircle, "base point and x coincide");
  }
  const Eigen::Index last = base.ambient_dim() - 1;
  Vec horizontal = base.coords();
  horizontal[last] = 0.0;
  const Vec chord = x.coords() - horizontal;
  const double chord_len = chord.norm();
  if (chord_len < 1e-12) {
    throw Error(ErrorCode::DegenerateCircle, "base point lies on the vertical line through x");
  }
  const Vec u = chord / chord_len;
  // The circle lives in the plane center + span{u, e_{n+1}}; (along, height)
  // are the coordinates of `base` relative to its center.
  const double along = horizontal.dot(u);
  const Vec center = horizontal - along * u;
  if (1.0 - center.squaredNorm() < 1e-24) {
    throw Error(ErrorCode::DegenerateCircle, "circle plane only touches the sphere");
  }
  const double height = base[last];

  Vec p = center + (along * phase.cos - height * phase.sin) * u;
  p[last] += height * phase.cos + along * phase.sin;
  return p;
}

Vec circle_beta(const SpherePoint& x, const SpherePoint& s1, Phase phase) {
  if (!is_equatorial(s1.coords())) {
    throw Error(ErrorCode::DegenerateInput, "circle_beta base point must be equatorial");
  }
  return vertical_circle(s1, x, phase);
}

Vec circle_beta(const SpherePoint& x, const SpherePoint& s1, double t) {
  return circle_beta(x, s1, Phase::of_fraction(t));
}

Mat rotation_to_base(const SpherePoint& s1) {
  const int n = s1.sphere_dim();
  const Vec s0 = south_pole(n).coords();
  const Vec& a = s1.coords();
  const double theta = angle_between(a, s0);
  if (theta < kAntipodalGuard || theta > std::numbers::pi - kAntipodalGuard) {
    throw Error(ErrorCode::DegenerateInput, "rotation plane undefined for s1 = +-s0");
  }
  const double c = a.dot(s0);
  const Vec b = (s0 - c * a).normalized();
  const double s = b.dot(s0);
  Mat r = Mat::Identity(n + 1, n + 1);
  r += (c - 1.0) * (a * a.transpose() + b * b.transpose());
  r += s * (b * a.transpose() - a * b.transpose());
  return r;
}

}  // namespace loopbu
