#pragma once

#include <Eigen/Dense>

#include "loopbu/error.hpp"

namespace loopbu {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kUnitTol = 1e-9;
inline constexpr double kAntipodalGuard = 1e-6;

// Unit vector in R^{n+1}, i.e. a point of S^n.
class SpherePoint {
 public:
  // Throws DegenerateInput unless |v| = 1 within kUnitTol and v has at least
  // two coordinates.
  static SpherePoint from_unit(Vec v);

  const Vec& coords() const noexcept { return coords_; }
  Eigen::Index ambient_dim() const noexcept { return coords_.size(); }
  int sphere_dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  double operator[](Eigen::Index i) const { return coords_[i]; }

  SpherePoint operator-() const { return SpherePoint(-coords_); }

 private:
  explicit SpherePoint(Vec v) : coords_(std::move(v)) {}
  Vec coords_;
};

SpherePoint normalize(const Vec& v);

// Base point s0 = -e_{n+1} (south pole) and the equatorial point s1 = e_1.
SpherePoint south_pole(int n);
SpherePoint equator_base(int n);

bool is_equatorial(const Vec& v, double tol = kUnitTol);

// Angle in [0, pi] between two unit vectors; stable near 0 and near pi.
double angle_between(const Vec& p, const Vec& q);

SpherePoint slerp(const SpherePoint& p, const SpherePoint& q, double t);

// (sin 2*pi*t, cos 2*pi*t) with the symmetries of the circle made exact:
// the phase at 1 - t is the mirror of the phase at t bit for bit, and the
// quarter points are exact. Grid evaluation uses the index form so that
// i/m is never rounded.
struct Phase {
  double sin = 0.0;
  double cos = 1.0;

  static Phase of_fraction(double t);
  static Phase of_grid(long i, long m);

  // Phase of 1 - t.
  Phase mirrored() const { return {-sin, cos}; }
};

class GeodesicArc {
 public:
  static GeodesicArc make(const SpherePoint& start, const SpherePoint& direction,
                          double angular_length);

  const SpherePoint& start() const noexcept { return start_; }
  const SpherePoint& direction() const noexcept { return direction_; }
  double angular_length() const noexcept { return length_; }

  // u in [0,1] maps linearly onto arc length.
  Vec point_at(double u) const;

 private:
  GeodesicArc(SpherePoint s, SpherePoint d, double len)
      : start_(std::move(s)), direction_(std::move(d)), length_(len) {}
  SpherePoint start_;
  SpherePoint direction_;
  double length_;
};

// Quarter meridian from the south pole up to the equatorial point x.
GeodesicArc meridian_arc(const SpherePoint& x);

// Vertical great circle through s0 and x; s0 at t = 0, x at t = 1/4, -x at 3/4.
Vec circle_alpha(const SpherePoint& x, double t);
Vec circle_alpha(const SpherePoint& x, Phase phase);

// Circle cut out by the plane parallel to the e_{n+1} axis through `base` and
// the equatorial point x. Starts at `base`, dips south first and runs at
// constant angular speed. `base` may be any point other than x and the poles'
// vertical line through x.
Vec vertical_circle(const SpherePoint& base, const SpherePoint& x, Phase phase);

// vertical_circle for an equatorial base s1: x is reached at t = 1/2.
Vec circle_beta(const SpherePoint& x, const SpherePoint& s1, double t);
Vec circle_beta(const SpherePoint& x, const SpherePoint& s1, Phase phase);

// Rotation R in the plane span{s0, s1} with R s1 = s0, identity on the
// orthogonal complement.
Mat rotation_to_base(const SpherePoint& s1);

}  // namespace loopbu
