#include "loopbu/embeddings.hpp"

#include <cmath>
#include <numbers>

namespace loopbu {

namespace {

constexpr double kClampMargin = 0.1;
constexpr int kSupGrid = 4096;

void require_equatorial(const SpherePoint& x) {
  if (!is_equatorial(x.coords())) {
    throw Error(ErrorCode::DegenerateInput, "embedding parameter x must lie on the equator");
  }
}

// Rank of the basis Gram matrix on the half-grid u_j = 2j/m.
void require_independent_on_grid(const TfSphereParams& params, int m) {
  const int half = m / 2;
  const int count = params.d() + 1;
  Mat values(half + 1, count);
  for (int j = 0; j <= half; ++j) {
    const double u = static_cast<double>(2 * j) / m;
    for (int i = 0; i < count; ++i) values(j, i) = params.basis()[static_cast<std::size_t>(i)](u);
  }
  const Mat gram = values.transpose() * values;
  const Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
  const double largest = eig.eigenvalues().maxCoeff();
  if (!(largest > 0.0) || eig.eigenvalues().minCoeff() <= 1e-10 * largest) {
    throw Error(ErrorCode::DegenerateInput, "basis functions are linearly dependent on this grid");
  }
}

}  // namespace

TfSphereParams TfSphereParams::make(int d, double amplitude_scale,
                                    std::vector<BasisFunction> basis) {
  if (d < 0) throw Error(ErrorCode::DegenerateInput, "d must be non-negative");
  if (static_cast<int>(basis.size()) != d + 1) {
    throw Error(ErrorCode::DegenerateInput, "need exactly d + 1 basis functions");
  }
  if (!(amplitude_scale > 0.0) || !std::isfinite(amplitude_scale)) {
    throw Error(ErrorCode::DegenerateInput, "amplitude scale must be positive");
  }
  double sup = 0.0;
  for (int j = 0; j <= kSupGrid; ++j) {
    const double u = static_cast<double>(j) / kSupGrid;
    double sq = 0.0;
    for (const auto& phi : basis) {
      const double v = phi(u);
      if (j == 0 && v != 0.0) {
        throw Error(ErrorCode::DegenerateInput, "basis functions must vanish at 0");
      }
      sq += v * v;
    }
    sup = std::max(sup, std::sqrt(sq));
  }
  if (amplitude_scale * sup > std::numbers::pi - kClampMargin + 1e-12) {
    throw Error(ErrorCode::DegenerateInput,
                "amplitude too large: the loop would reach the antipode of s0");
  }
  return TfSphereParams(d, amplitude_scale, std::move(basis));
}

TfSphereParams TfSphereParams::defaults(int d) {
  std::vector<BasisFunction> basis;
  for (int i = 0; i <= d; ++i) {
    basis.emplace_back([i](double u) { return std::sin((i + 1) * std::numbers::pi * u); });
  }
  return make(d, (std::numbers::pi - kClampMargin) / std::sqrt(d + 1.0), std::move(basis));
}

double TfSphereParams::angle(const Vec& c, double u) const {
  double sum = 0.0;
  for (int i = 0; i <= d_; ++i) sum += c[i] * basis_[static_cast<std::size_t>(i)](u);
  return amplitude_scale_ * sum;
}

Loop embed_alpha(const SpherePoint& x, int m) {
  require_grid(m);
  require_equatorial(x);
  std::vector<Vec> samples;
  samples.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) samples.push_back(circle_alpha(x, Phase::of_grid(i, m)));
  return Loop::make(Manifold::Sphere, x.sphere_dim(), std::move(samples),
                    south_pole(x.sphere_dim()).coords());
}

Loop embed_beta(const SpherePoint& x, int m, bool rotate_to_s0) {
  require_grid(m);
  require_equatorial(x);
  const int n = x.sphere_dim();
  const SpherePoint s1 = equator_base(n);
  std::vector<Vec> samples;
  samples.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) samples.push_back(circle_beta(x, s1, Phase::of_grid(i, m)));
  if (!rotate_to_s0) return Loop::make(Manifold::Sphere, n, std::move(samples), s1.coords());

  const Mat r = rotation_to_base(s1);
  for (auto& p : samples) p = r * p;
  return Loop::make(Manifold::Sphere, n, std::move(samples), south_pole(n).coords());
}

Loop h_lambda(const SpherePoint& x, double lambda, int m) {
  require_grid(m);
  require_equatorial(x);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::DegenerateInput, "lambda must lie in [0, 1]");
  }
  const int n = x.sphere_dim();
  const SpherePoint base = slerp(south_pole(n), equator_base(n), lambda);
  std::vector<Vec> samples;
  samples.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) samples.push_back(vertical_circle(base, x, Phase::of_grid(i, m)));
  return Loop::make(Manifold::Sphere, n, std::move(samples), base.coords());
}

Loop tf_sphere_embed(const Vec& c, const TfSphereParams& params, int n, int m) {
  require_grid(m);
  if (c.size() != params.d() + 1 || std::abs(c.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorCode::DegenerateInput, "c must be a unit vector in R^{d+1}");
  }
  require_independent_on_grid(params, m);
  const Vec s0 = south_pole(n).coords();
  const Vec e1 = equator_base(n).coords();
  const int half = m / 2;
  std::vector<Vec> samples(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= half; ++i) {
    const double theta = params.angle(c, static_cast<double>(2 * i) / m);
    samples[static_cast<std::size_t>(i)] = std::cos(theta) * s0 + std::sin(theta) * e1;
  }
  for (int i = half + 1; i <= m; ++i) {
    samples[static_cast<std::size_t>(i)] = samples[static_cast<std::size_t>(m - i)];
  }
  return Loop::make(Manifold::Sphere, n, std::move(samples), s0);
}

Loop embed_gamma(const Loop& omega, const SpherePoint& x) {
  require_equatorial(x);
  if (!is_tf(omega, kTfTol)) {
    throw Error(ErrorCode::DegenerateInput, "gamma embeddings start from a to-and-fro loop");
  }
  return pushoff(omega, PushoffArcs::make(meridian_arc(x), meridian_arc(-x)));
}

}  // namespace loopbu
