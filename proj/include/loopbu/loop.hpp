#pragma once

#include <vector>

#include "loopbu/sphere_geom.hpp"

namespace loopbu {

enum class Manifold { Sphere, Euclidean };

inline constexpr double kTfTol = 1e-8;

// Closed path sampled at t_i = i/m, i = 0..m, with samples[0] = samples[m] =
// base. Sphere loops live on S^n (ambient dimension n+1), Euclidean loops in
// R^n. Construction validates every invariant; a Loop value is immutable.
class Loop {
 public:
  static Loop make(Manifold manifold, int n, std::vector<Vec> samples, Vec base);

  Manifold manifold() const noexcept { return manifold_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return static_cast<int>(samples_.size()) - 1; }
  Eigen::Index ambient_dim() const noexcept { return base_.size(); }
  const std::vector<Vec>& samples() const noexcept { return samples_; }
  const Vec& base() const noexcept { return base_; }
  const Vec& operator[](std::size_t i) const { return samples_[i]; }

  friend bool operator==(const Loop& a, const Loop& b);

 private:
  Loop(Manifold manifold, int n, std::vector<Vec> samples, Vec base)
      : manifold_(manifold), n_(n), samples_(std::move(samples)), base_(std::move(base)) {}

  Manifold manifold_;
  int n_;
  std::vector<Vec> samples_;
  Vec base_;
};

// Ambient dimension of the space a loop of this kind lives in.
Eigen::Index ambient_dim(Manifold manifold, int n);

// m >= 16 and m divisible by 16.
bool valid_grid(int m);
void require_grid(int m);

Loop constant_loop(Manifold manifold, int n, int m, const Vec& base);

Loop star(const Loop& alpha);

// max_i |alpha(t_i) - alpha(1 - t_i)| in ambient coordinates.
double tf_distance(const Loop& alpha);
bool is_tf(const Loop& alpha, double tol = kTfTol);

// Piecewise geodesic (sphere) or piecewise linear (Euclidean) interpolation,
// exact at grid nodes.
Vec eval(const Loop& alpha, double t);

double max_node_distance(const Loop& a, const Loop& b);

class PushoffArcs {
 public:
  static PushoffArcs make(GeodesicArc mu, GeodesicArc nu);

  const GeodesicArc& mu() const noexcept { return mu_; }
  const GeodesicArc& nu() const noexcept { return nu_; }

  PushoffArcs swapped() const { return PushoffArcs(nu_, mu_); }

 private:
  PushoffArcs(GeodesicArc mu, GeodesicArc nu) : mu_(std::move(mu)), nu_(std::move(nu)) {}
  GeodesicArc mu_;
  GeodesicArc nu_;
};

// Opposite quarter meridians through e_1 and -e_1 starting at s0.
PushoffArcs default_pushoff_arcs(int n);

// The deformation that inserts an out-and-back spur along mu at the start and
// along nu at the end, squeezing alpha into [s/4, 1 - s/4]. s = 0 returns
// alpha unchanged; s = 1 yields a loop off the to-and-fro set.
Loop pushoff_homotopy(const Loop& alpha, double s, const PushoffArcs& arcs);
Loop pushoff(const Loop& alpha, const PushoffArcs& arcs);

}  // namespace loopbu
