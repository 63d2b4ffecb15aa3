#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "loopbu/loop.hpp"

namespace loopbu::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double normal() { return std::normal_distribution<double>()(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Vec gaussian(Eigen::Index dim) {
    Vec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  Vec unit(Eigen::Index dim) {
    Vec v = gaussian(dim);
    while (v.norm() < 1e-3) v = gaussian(dim);
    return v / v.norm();
  }

  // Unit vector of R^{n+1} with last coordinate 0.
  Vec equatorial(int n) {
    Vec v = Vec::Zero(n + 1);
    v.head(n) = unit(n);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

// Smooth loop on S^n based at s0: s0 plus a few sin(pi q t) bumps, projected
// back to the sphere.
inline Loop random_sphere_loop(Rng& rng, int n, int m, double amplitude = 0.6) {
  const Vec base = south_pole(n).coords();
  std::vector<Vec> bumps;
  for (int q = 1; q <= 3; ++q) bumps.push_back(amplitude / q * rng.gaussian(n + 1));
  std::vector<Vec> samples;
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    Vec p = base;
    for (int q = 1; q <= 3; ++q) p += std::sin(std::numbers::pi * q * t) * bumps[q - 1];
    samples.push_back(p / p.norm());
  }
  samples.front() = base;
  samples.back() = base;
  return Loop::make(Manifold::Sphere, n, std::move(samples), base);
}

// Random to-and-fro loop on S^n: a random path from s0 on [0, 1/2], mirrored.
inline Loop random_tf_loop(Rng& rng, int n, int m, double amplitude = 0.6) {
  const Vec base = south_pole(n).coords();
  std::vector<Vec> bumps;
  for (int q = 1; q <= 3; ++q) bumps.push_back(amplitude / q * rng.gaussian(n + 1));
  std::vector<Vec> samples(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m / 2; ++i) {
    const double u = 2.0 * i / m;
    Vec p = base;
    for (int q = 1; q <= 3; ++q) p += (1.0 - std::cos(std::numbers::pi * q * u)) * bumps[q - 1];
    samples[static_cast<std::size_t>(i)] = p / p.norm();
    samples[static_cast<std::size_t>(m - i)] = samples[static_cast<std::size_t>(i)];
  }
  samples.front() = base;
  samples.back() = base;
  return Loop::make(Manifold::Sphere, n, std::move(samples), base);
}

// Euclidean closed loop in R^dim at the origin.
inline Loop random_euclidean_loop(Rng& rng, int dim, int m) {
  std::vector<Vec> coeffs;
  for (int q = 1; q <= 4; ++q) coeffs.push_back(rng.gaussian(dim) / q);
  std::vector<Vec> samples;
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    Vec p = Vec::Zero(dim);
    for (int q = 1; q <= 4; ++q) p += std::sin(std::numbers::pi * q * t) * coeffs[q - 1];
    samples.push_back(p);
  }
  samples.front() = Vec::Zero(dim);
  samples.back() = Vec::Zero(dim);
  return Loop::make(Manifold::Euclidean, dim, std::move(samples), Vec::Zero(dim));
}

// Gauss-Legendre rule on [a, b] with `points` nodes, nodes found by Newton
// iteration on the Legendre recurrence.
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                             int points = 48, int panels = 16) {
  std::vector<double> nodes(points), weights(points);
  for (int i = 0; i < points; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  double total = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < points; ++i) {
      total += 0.5 * h * weights[i] * f(lo + 0.5 * h * (nodes[i] + 1.0));
    }
  }
  return total;
}

inline double max_abs_diff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).lpNorm<Eigen::Infinity>());
  return worst;
}

}  // namespace loopbu::testing
