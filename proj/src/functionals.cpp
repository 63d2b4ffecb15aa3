#include "loopbu/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "loopbu/grid.hpp"

namespace loopbu {

namespace {

// Composite Simpson rule with an even number of subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  }
  return sum * h / 3.0;
}

void require_samples(const FunctionalSpec& spec, std::span<const Vec> samples) {
  if (static_cast<int>(samples.size()) != spec.m() + 1) {
    throw Error(ErrorCode::GridMismatch, "path has " + std::to_string(samples.size()) +
                                             " samples, functional expects " +
                                             std::to_string(spec.m() + 1));
  }
  for (const Vec& p : samples) {
    if (p.size() != spec.ambient_dim()) {
      throw Error(ErrorCode::GridMismatch, "path dimension differs from the functional's");
    }
  }
}

}  // namespace

SampledPath SampledPath::make(std::vector<Vec> samples) {
  if (samples.size() < 2) throw Error(ErrorCode::InvalidInput, "paths need at least 2 samples");
  const Eigen::Index dim = samples.front().size();
  if (dim < 1) throw Error(ErrorCode::InvalidInput, "paths need at least one coordinate");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != dim) {
      throw Error(ErrorCode::InvalidInput,
                  "samples[" + std::to_string(i) + "]: inconsistent dimension");
    }
    if (!samples[i].allFinite()) {
      throw Error(ErrorCode::InvalidInput,
                  "samples[" + std::to_string(i) + "]: non-finite coordinate");
    }
  }
  return SampledPath(std::move(samples));
}

Vec SampledPath::eval(double t) const {
  const GridPosition pos = locate(t, m());
  if (pos.frac == 0.0) return samples_[pos.index];
  return (1.0 - pos.frac) * samples_[pos.index] + pos.frac * samples_[pos.index + 1];
}

SampledPath sample_path(const std::function<Vec(double)>& f, int m) {
  std::vector<Vec> samples;
  samples.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) samples.push_back(f(static_cast<double>(i) / m));
  return SampledPath::make(std::move(samples));
}

SampledPath random_trig_path(Eigen::Index dim, int m, int modes, double amplitude,
                             std::uint64_t seed) {
  if (dim < 1 || m < 1 || modes < 0) throw Error(ErrorCode::InvalidInput, "bad random path request");
  std::mt19937_64 gen(seed);
  auto draw = [&] {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return amplitude * (2.0 * u - 1.0);
  };
  std::vector<Vec> coeffs;  // a_0, a_1, b_1, a_2, b_2, ...
  for (int c = 0; c < 2 * modes + 1; ++c) {
    Vec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = draw();
    coeffs.push_back(std::move(v));
  }
  return sample_path(
      [&](double t) {
        Vec p = coeffs[0];
        for (int q = 1; q <= modes; ++q) {
          const Phase phase = Phase::of_fraction(q * t);
          p += phase.cos * coeffs[static_cast<std::size_t>(2 * q - 1)] +
               phase.sin * coeffs[static_cast<std::size_t>(2 * q)];
        }
        return p;
      },
      m);
}

FunctionalSpec FunctionalSpec::make(std::vector<FunctionalComponent> components, int m,
                                    Eigen::Index ambient_dim) {
  if (components.empty()) throw Error(ErrorCode::InvalidInput, "functional needs k >= 1 components");
  if (m < 1 || ambient_dim < 1) throw Error(ErrorCode::InvalidInput, "bad grid or dimension");
  for (std::size_t j = 0; j < components.size(); ++j) {
    const std::string where = "component[" + std::to_string(j) + "]: ";
    if (const auto* sq = std::get_if<SquaredDistanceToPath>(&components[j])) {
      if (sq->beta.m() != m) {
        throw Error(ErrorCode::GridMismatch, where + "beta sampled on grid " +
                                                 std::to_string(sq->beta.m()) + ", expected " +
                                                 std::to_string(m));
      }
      if (sq->beta.dim() != ambient_dim) {
        throw Error(ErrorCode::GridMismatch, where + "beta lives in dimension " +
                                                 std::to_string(sq->beta.dim()) + ", expected " +
                                                 std::to_string(ambient_dim));
      }
    } else {
      const auto& wc = std::get<WeightedCoordinate>(components[j]);
      if (wc.axis < 0 || wc.axis >= ambient_dim) {
        throw Error(ErrorCode::InvalidInput, where + "axis out of range");
      }
      if (static_cast<int>(wc.weights.size()) != m + 1) {
        throw Error(ErrorCode::GridMismatch, where + "weights must have m + 1 entries");
      }
      if (!std::all_of(wc.weights.begin(), wc.weights.end(),
                       [](double w) { return std::isfinite(w); })) {
        throw Error(ErrorCode::InvalidInput, where + "weights must be finite");
      }
    }
  }
  return FunctionalSpec(std::move(components), m, ambient_dim);
}

double quadrature(std::span<const double> values, double a, double b) {
  if (values.size() < 2) throw Error(ErrorCode::InvalidInput, "quadrature needs >= 2 samples");
  const double h = (b - a) / static_cast<double>(values.size() - 1);
  // Mirrored pairs are added first so reversed samples give the same sum bit
  // for bit.
  const std::size_t last = values.size() - 1;
  double interior = 0.0;
  std::size_t i = 1;
  for (; i < last - i; ++i) interior += values[i] + values[last - i];
  if (i == last - i) interior += values[i];
  return h * (0.5 * (values.front() + values.back()) + interior);
}

Vec eval_f(const FunctionalSpec& spec, std::span<const Vec> samples) {
  require_samples(spec, samples);
  Vec out(spec.k());
  std::vector<double> integrand(samples.size());
  for (int j = 0; j < spec.k(); ++j) {
    const auto& component = spec.components()[static_cast<std::size_t>(j)];
    if (const auto* sq = std::get_if<SquaredDistanceToPath>(&component)) {
      const auto& beta = sq->beta.samples();
      for (std::size_t i = 0; i < samples.size(); ++i) {
        integrand[i] = (samples[i] - beta[i]).squaredNorm();
      }
    } else {
      const auto& wc = std::get<WeightedCoordinate>(component);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        integrand[i] = wc.weights[i] * samples[i][wc.axis];
      }
    }
    out[j] = quadrature(integrand);
  }
  return out;
}

Vec eval_f(const FunctionalSpec& spec, const Loop& alpha) { return eval_f(spec, alpha.samples()); }

Vec coincidence_gap(const FunctionalSpec& spec, const Loop& alpha) {
  return eval_f(spec, alpha) - eval_f(spec, star(alpha));
}

Vec linearized_gap(const FunctionalSpec& spec, const Loop& alpha) {
  const auto& s = alpha.samples();
  require_samples(spec, s);
  const Vec gap = coincidence_gap(spec, alpha);
  Vec out(spec.k());
  const std::size_t m = s.size() - 1;
  std::vector<double> integrand(s.size());
  for (int j = 0; j < spec.k(); ++j) {
    const auto* sq = std::get_if<SquaredDistanceToPath>(&spec.components()[static_cast<std::size_t>(j)]);
    if (sq == nullptr) {
      out[j] = gap[j];
      continue;
    }
    const auto& beta = sq->beta.samples();
    for (std::size_t i = 0; i <= m; ++i) integrand[i] = s[i].dot(beta[m - i] - beta[i]);
    out[j] = 2.0 * quadrature(integrand);
  }
  return out;
}

std::vector<ScalarBasis> sine_basis(int count) {
  std::vector<ScalarBasis> basis;
  for (int a = 1; a <= count; ++a) {
    basis.emplace_back([a](double t) { return std::sin(4.0 * std::numbers::pi * a * t); });
  }
  return basis;
}

ReducedSystem build_reduced_system(std::span<const SampledPath> betas, int basis_size,
                                   ReducedSystemOptions options) {
  return build_reduced_system(betas, sine_basis(basis_size), options);
}

ReducedSystem build_reduced_system(std::span<const SampledPath> betas,
                                   std::vector<ScalarBasis> basis, ReducedSystemOptions options) {
  if (betas.empty()) throw Error(ErrorCode::InvalidInput, "need at least one path beta_j");
  if (basis.empty()) throw Error(ErrorCode::InvalidInput, "basis size must be >= 1");
  if (options.refine < 2) throw Error(ErrorCode::InvalidInput, "refine must be >= 2");
  const int m = betas.front().m();
  const auto n = static_cast<int>(betas.front().dim());
  for (const auto& beta : betas) {
    if (beta.m() != m || beta.dim() != n) {
      throw Error(ErrorCode::GridMismatch, "all beta paths must share grid and dimension");
    }
  }
  for (const auto& phi : basis) {
    if (phi(0.0) != 0.0) throw Error(ErrorCode::InvalidInput, "basis functions must vanish at 0");
  }

  const int basis_size = static_cast<int>(basis.size());
  const int cells = std::max(1, (m + 3) / 4);
  const int intervals = cells * options.refine;

  ReducedSystem system;
  system.basis_size = basis_size;
  system.n = n;
  system.matrix = Mat::Zero(static_cast<Eigen::Index>(betas.size()), basis_size * n);
  for (std::size_t j = 0; j < betas.size(); ++j) {
    const SampledPath& beta = betas[j];
    auto h = [&beta](double t) {
      return Vec(beta.eval(1.0 - t) - beta.eval(t) + beta.eval(0.5 + t) - beta.eval(0.5 - t));
    };
    for (int a = 0; a < basis_size; ++a) {
      const ScalarBasis& phi = basis[static_cast<std::size_t>(a)];
      for (int i = 0; i < n; ++i) {
        system.matrix(static_cast<Eigen::Index>(j), a * n + i) =
            simpson([&](double t) { return phi(t) * h(t)[i]; }, 0.0, 0.25, intervals);
      }
    }
  }
  system.basis = std::move(basis);
  return system;
}

std::vector<Vec> null_space(const ReducedSystem& system, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidInput, "kernel tolerance must be positive");
  const Mat& a = system.matrix;
  const Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& sigma = svd.singularValues();
  const double largest = sigma.size() > 0 ? sigma.maxCoeff() : 0.0;
  Eigen::Index rank = 0;
  if (largest > 0.0) {
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      if (sigma[i] > tol * largest) ++rank;
    }
  }
  const Mat& v = svd.matrixV();
  std::vector<Vec> kernel;
  for (Eigen::Index c = rank; c < v.cols(); ++c) {
    Vec col = v.col(c);
    Eigen::Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    if (col[pivot] < 0.0) col = -col;
    kernel.push_back(std::move(col));
  }
  return kernel;
}

Loop build_alpha_x(const Vec& coeffs, const ReducedSystem& system, int m) {
  require_grid(m);
  if (coeffs.size() != system.unknowns()) {
    throw Error(ErrorCode::InvalidInput, "coefficient vector must have N n entries");
  }
  const int n = system.n;
  std::vector<Vec> samples(static_cast<std::size_t>(m) + 1, Vec::Zero(n));
  const int quarter = m / 4;
  for (int i = 0; i <= quarter; ++i) {
    const double t = static_cast<double>(i) / m;
    Vec x = Vec::Zero(n);
    for (int a = 0; a < system.basis_size; ++a) {
      x += system.basis[static_cast<std::size_t>(a)](t) * coeffs.segment(a * n, n);
    }
    samples[static_cast<std::size_t>(i)] = x;
  }
  for (int i = quarter + 1; i <= m / 2; ++i) {
    samples[static_cast<std::size_t>(i)] = samples[static_cast<std::size_t>(m / 2 - i)];
  }
  return Loop::make(Manifold::Euclidean, n, std::move(samples), Vec::Zero(n));
}

double path_scale(std::span<const SampledPath> betas) {
  double scale = 1.0;
  for (const auto& beta : betas) {
    for (const auto& p : beta.samples()) scale = std::max(scale, p.norm());
  }
  return scale;
}

}  // namespace loopbu
