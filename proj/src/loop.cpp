#include "loopbu/loop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "loopbu/grid.hpp"

namespace loopbu {

namespace {

Vec slerp_unchecked(const Vec& p, const Vec& q, double t) {
  const double theta = angle_between(p, q);
  if (theta > std::numbers::pi - kAntipodalGuard) {
    throw Error(ErrorCode::AntipodalPair, "adjacent loop samples are (near) antipodal");
  }
  if (theta < 1e-8) {
    const Vec v = (1.0 - t) * p + t * q;
    return v / v.norm();
  }
  const double s = std::sin(theta);
  return std::sin((1.0 - t) * theta) / s * p + std::sin(t * theta) / s * q;
}

}  // namespace

Eigen::Index ambient_dim(Manifold manifold, int n) {
  return manifold == Manifold::Sphere ? n + 1 : n;
}

bool valid_grid(int m) { return m >= 16 && m % 16 == 0; }

void require_grid(int m) {
  if (!valid_grid(m)) {
    throw Error(ErrorCode::InvalidInput,
                "grid size m = " + std::to_string(m) + " must be >= 16 and divisible by 16");
  }
}

Loop Loop::make(Manifold manifold, int n, std::vector<Vec> samples, Vec base) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n: dimension must be >= 1");
  const int m = static_cast<int>(samples.size()) - 1;
  require_grid(m);
  const Eigen::Index dim = loopbu::ambient_dim(manifold, n);
  if (base.size() != dim) {
    throw Error(ErrorCode::InvalidInput, "base: expected " + std::to_string(dim) + " coordinates");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec& p = samples[i];
    std::ostringstream where;
    where << "samples[" << i << "]: ";
    if (p.size() != dim) {
      throw Error(ErrorCode::InvalidInput,
                  where.str() + "expected " + std::to_string(dim) + " coordinates");
    }
    if (!p.allFinite()) throw Error(ErrorCode::InvalidInput, where.str() + "non-finite coordinate");
    if (manifold == Manifold::Sphere && std::abs(p.norm() - 1.0) > kUnitTol) {
      where << "norm " << p.norm() << " is not 1";
      throw Error(ErrorCode::InvalidInput, where.str());
    }
  }
  if (manifold == Manifold::Sphere && std::abs(base.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorCode::InvalidInput, "base: not a unit vector");
  }
  if ((samples.front() - base).norm() > kUnitTol) {
    throw Error(ErrorCode::InvalidInput, "samples[0]: does not match the base point");
  }
  if ((samples.back() - base).norm() > kUnitTol) {
    throw Error(ErrorCode::InvalidInput,
                "samples[" + std::to_string(m) + "]: does not match the base point");
  }
  return Loop(manifold, n, std::move(samples), std::move(base));
}

bool operator==(const Loop& a, const Loop& b) {
  return a.manifold_ == b.manifold_ && a.n_ == b.n_ && a.base_ == b.base_ &&
         a.samples_ == b.samples_;
}

Loop constant_loop(Manifold manifold, int n, int m, const Vec& base) {
  require_grid(m);
  return Loop::make(manifold, n, std::vector<Vec>(static_cast<std::size_t>(m) + 1, base), base);
}

Loop star(const Loop& alpha) {
  std::vector<Vec> reversed(alpha.samples().rbegin(), alpha.samples().rend());
  return Loop::make(alpha.manifold(), alpha.n(), std::move(reversed), alpha.base());
}

double tf_distance(const Loop& alpha) {
  const auto& s = alpha.samples();
  const std::size_t m = s.size() - 1;
  double worst = 0.0;
  for (std::size_t i = 0; i <= m / 2; ++i) {
    worst = std::max(worst, (s[i] - s[m - i]).norm());
  }
  return worst;
}

bool is_tf(const Loop& alpha, double tol) { return tf_distance(alpha) <= tol; }

Vec eval(const Loop& alpha, double t) {
  const GridPosition pos = locate(t, alpha.m());
  const auto& s = alpha.samples();
  if (pos.frac == 0.0) return s[pos.index];
  if (alpha.manifold() == Manifold::Euclidean) {
    return (1.0 - pos.frac) * s[pos.index] + pos.frac * s[pos.index + 1];
  }
  return slerp_unchecked(s[pos.index], s[pos.index + 1], pos.frac);
}

double max_node_distance(const Loop& a, const Loop& b) {
  if (a.m() != b.m() || a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::GridMismatch, "loops are sampled on different grids");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) {
    worst = std::max(worst, (a[i] - b[i]).norm());
  }
  return worst;
}

PushoffArcs PushoffArcs::make(GeodesicArc mu, GeodesicArc nu) {
  if ((mu.start().coords() - nu.start().coords()).norm() > kUnitTol) {
    throw Error(ErrorCode::DegenerateInput, "push-off arcs must share their start point");
  }
  if (std::abs(mu.angular_length() - nu.angular_length()) > kUnitTol) {
    throw Error(ErrorCode::DegenerateInput, "push-off arcs must have the same length");
  }
  if (angle_between(mu.direction().coords(), nu.direction().coords()) <= kAntipodalGuard) {
    throw Error(ErrorCode::DegenerateInput, "push-off arcs must differ");
  }
  return PushoffArcs(std::move(mu), std::move(nu));
}

PushoffArcs default_pushoff_arcs(int n) {
  const SpherePoint e1 = equator_base(n);
  return PushoffArcs::make(meridian_arc(e1), meridian_arc(-e1));
}

Loop pushoff_homotopy(const Loop& alpha, double s, const PushoffArcs& arcs) {
  if (alpha.manifold() != Manifold::Sphere) {
    throw Error(ErrorCode::DegenerateInput, "push-off is defined for sphere loops");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::DegenerateInput, "push-off parameter s must lie in [0, 1]");
  }
  if (arcs.mu().start().ambient_dim() != alpha.ambient_dim() ||
      (alpha.base() - arcs.mu().start().coords()).norm() > kUnitTol) {
    throw Error(ErrorCode::BaseMismatch, "push-off arcs must start at the loop's base point");
  }

  const double quarter = s / 4.0;
  const double eighth = s / 8.0;
  const double squeeze = 2.0 / (2.0 - s);
  const int m = alpha.m();
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    if (t >= quarter && t <= 1.0 - quarter) {
      out.push_back(eval(alpha, squeeze * (t - quarter)));
    } else if (t <= eighth) {
      out.push_back(arcs.mu().point_at(8.0 * t));
    } else if (t < quarter) {
      out.push_back(arcs.mu().point_at(2.0 * s - 8.0 * t));
    } else if (t <= 1.0 - eighth) {
      out.push_back(arcs.nu().point_at(8.0 * (t + quarter - 1.0)));
    } else {
      out.push_back(arcs.nu().point_at(8.0 * (1.0 - t)));
    }
  }
  return Loop::make(Manifold::Sphere, alpha.n(), std::move(out), alpha.base());
}

Loop pushoff(const Loop& alpha, const PushoffArcs& arcs) { return pushoff_homotopy(alpha, 1.0, arcs); }

}  // namespace loopbu
