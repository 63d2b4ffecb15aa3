#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "loopbu/loop.hpp"

namespace loopbu {

// Path in R^d sampled at t_i = i/m; not required to be closed. Evaluation
// between nodes is linear.
class SampledPath {
 public:
  static SampledPath make(std::vector<Vec> samples);

  int m() const noexcept { return static_cast<int>(samples_.size()) - 1; }
  Eigen::Index dim() const noexcept { return samples_.front().size(); }
  const std::vector<Vec>& samples() const noexcept { return samples_; }

  Vec eval(double t) const;

 private:
  explicit SampledPath(std::vector<Vec> samples) : samples_(std::move(samples)) {}
  std::vector<Vec> samples_;
};

// Samples f on the grid t_i = i/m.
SampledPath sample_path(const std::function<Vec(double)>& f, int m);

// beta(t) = a_0 + sum_{q=1..modes} a_q cos(2 pi q t) + b_q sin(2 pi q t) with
// coefficients uniform in [-amplitude, amplitude], drawn from mt19937_64 so
// the path is reproducible across platforms for a given seed.
SampledPath random_trig_path(Eigen::Index dim, int m, int modes, double amplitude,
                             std::uint64_t seed);

// f_j(alpha) = int_0^1 |alpha(t) - beta_j(t)|^2 dt
struct SquaredDistanceToPath {
  SampledPath beta;
};

// f_j(alpha) = int_0^1 w(t) alpha_axis(t) dt, axis 0-based.
struct WeightedCoordinate {
  int axis = 0;
  std::vector<double> weights;
};

using FunctionalComponent = std::variant<SquaredDistanceToPath, WeightedCoordinate>;

class FunctionalSpec {
 public:
  // All components must be sampled on the grid of size m and, for
  // squared-distance components, live in R^{ambient_dim}.
  static FunctionalSpec make(std::vector<FunctionalComponent> components, int m,
                             Eigen::Index ambient_dim);

  int k() const noexcept { return static_cast<int>(components_.size()); }
  int m() const noexcept { return m_; }
  Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<FunctionalComponent>& components() const noexcept { return components_; }

 private:
  FunctionalSpec(std::vector<FunctionalComponent> c, int m, Eigen::Index dim)
      : components_(std::move(c)), m_(m), ambient_dim_(dim) {}
  std::vector<FunctionalComponent> components_;
  int m_;
  Eigen::Index ambient_dim_;
};

// Composite trapezoid rule for samples on a uniform grid over [a, b].
double quadrature(std::span<const double> values, double a = 0.0, double b = 1.0);

Vec eval_f(const FunctionalSpec& spec, std::span<const Vec> samples);
Vec eval_f(const FunctionalSpec& spec, const Loop& alpha);

// f(alpha) - f(alpha*).
Vec coincidence_gap(const FunctionalSpec& spec, const Loop& alpha);

// The linear form of the gap for squared-distance components:
// 2 int_0^1 <alpha(t), beta_j(1-t) - beta_j(t)> dt. Weighted-coordinate
// components are reported through coincidence_gap unchanged.
Vec linearized_gap(const FunctionalSpec& spec, const Loop& alpha);

using ScalarBasis = std::function<double(double)>;

// phi_a(t) = sin(4 pi a t), a = 1..count.
std::vector<ScalarBasis> sine_basis(int count);

// Homogeneous system M c = 0 whose solutions c give curves
// x(t) = sum_a phi_a(t) c_{a n .. a n + n - 1} on [0, 1/4] with f(alpha_x) =
// f(alpha_x*). Entry (j, a n + i) is the integral over [0, 1/4] of
// phi_a(t) h_{j,i}(t), h_j(t) = beta_j(1-t) - beta_j(t) + beta_j(1/2+t) - beta_j(1/2-t).
struct ReducedSystem {
  Mat matrix;
  int basis_size = 0;
  int n = 0;
  std::vector<ScalarBasis> basis;

  int unknowns() const noexcept { return basis_size * n; }
  // N n > k: a nontrivial kernel is guaranteed.
  bool kernel_guaranteed() const noexcept { return unknowns() > matrix.rows(); }
};

struct ReducedSystemOptions {
  // Simpson subintervals per beta grid cell.
  int refine = 16;
};

// Requires all betas on one grid in one dimension. N n <= k is accepted
// (check kernel_guaranteed()); the kernel may still be nontrivial.
ReducedSystem build_reduced_system(std::span<const SampledPath> betas, int basis_size,
                                   ReducedSystemOptions options = {});
ReducedSystem build_reduced_system(std::span<const SampledPath> betas,
                                   std::vector<ScalarBasis> basis,
                                   ReducedSystemOptions options = {});

// Orthonormal kernel basis from the SVD, singular values below
// tol * sigma_max counted as zero. Each vector is signed so that its
// largest-magnitude entry is positive.
std::vector<Vec> null_space(const ReducedSystem& system, double tol = 1e-10);

// Euclidean loop alpha_x: x(t) on [0,1/4], x(1/2-t) on [1/4,1/2], 0 after.
Loop build_alpha_x(const Vec& coeffs, const ReducedSystem& system, int m);

// max(1, max_{j,i} |beta_j(t_i)|); the scale used by residual thresholds.
double path_scale(std::span<const SampledPath> betas);

}  // namespace loopbu
