#include "loopbu/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "loopbu/parallel.hpp"

namespace loopbu {

namespace {

constexpr double kCertificateTfFloor = 1e-6;
constexpr int kHalfCircleSteps = 64;

SpherePoint lift_to_equator(const Vec& x) {
  Vec lifted = Vec::Zero(x.size() + 1);
  lifted.head(x.size()) = x;
  return SpherePoint::from_unit(std::move(lifted));
}

Vec unit(const Vec& v) { return v / v.norm(); }

// Orthonormal basis of the tangent space of S^{n-1} at x, as columns.
Mat tangent_basis(const Vec& x) {
  const Eigen::Index n = x.size();
  const Eigen::HouseholderQR<Mat> qr(x);
  const Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

// Some unit vector orthogonal to x.
Vec orthogonal_direction(const Vec& x) {
  Eigen::Index weakest = 0;
  x.cwiseAbs().minCoeff(&weakest);
  Vec e = Vec::Zero(x.size());
  e[weakest] = 1.0;
  return unit(e - x.dot(e) * x);
}

SolveResult make_result(const OddMapProblem& problem, const Vec& x, double g_norm, int iterations,
                        SolveMethod method, double tol) {
  Loop loop = problem.embed(x);
  const double residual = coincidence_gap(problem.spec(), loop).norm();
  const double tf = tf_distance(loop);
  return SolveResult{CoincidenceCertificate{x, std::move(loop), residual, tf, iterations, method},
                     g_norm, g_norm <= tol};
}

struct Candidate {
  Vec x;
  double g_norm;
};

std::vector<Candidate> ranked_grid(const OddMapProblem& problem, const SolverConfig& config) {
  const std::vector<Vec> grid = hemisphere_grid(problem.n(), config.grid_points);
  std::vector<double> norms(grid.size());
  parallel_for(grid.size(), config.threads,
               [&](std::size_t i) { norms[i] = odd_map_g(problem, grid[i]).norm(); });
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] < norms[b]; });
  std::vector<Candidate> ranked;
  ranked.reserve(order.size());
  for (std::size_t i : order) ranked.push_back({grid[i], norms[i]});
  return ranked;
}

// k = 1: g changes sign along the half great circle from x0 to -x0.
SolveResult solve_by_bisection(const OddMapProblem& problem, const Vec& x0,
                               const SolverConfig& config) {
  const Vec y0 = orthogonal_direction(x0);
  auto point = [&](double theta) { return unit(std::cos(theta) * x0 + std::sin(theta) * y0); };
  auto g = [&](double theta) { return odd_map_g(problem, point(theta))[0]; };

  const double g0 = g(0.0);
  double lo = 0.0;
  double g_lo = g0;
  double hi = std::numbers::pi;
  double g_hi = -g_lo;
  const double step = std::numbers::pi / kHalfCircleSteps;
  for (int j = 1; j <= kHalfCircleSteps; ++j) {
    const double theta = j == kHalfCircleSteps ? std::numbers::pi : j * step;
    const double value = j == kHalfCircleSteps ? -g0 : g(theta);
    if (value == 0.0 || std::signbit(value) != std::signbit(g_lo)) {
      hi = theta;
      g_hi = value;
      break;
    }
    lo = theta;
    g_lo = value;
  }

  int iterations = 0;
  while (iterations < config.iters && std::abs(g_lo) > 1e-3 * config.tol &&
         std::abs(g_hi) > 1e-3 * config.tol && hi - lo > 4e-16) {
    const double mid = 0.5 * (lo + hi);
    const double value = g(mid);
    ++iterations;
    if (value == 0.0 || std::signbit(value) != std::signbit(g_lo)) {
      hi = mid;
      g_hi = value;
    } else {
      lo = mid;
      g_lo = value;
    }
  }
  const bool take_lo = std::abs(g_lo) <= std::abs(g_hi);
  const Vec x = point(take_lo ? lo : hi);
  return make_result(problem, x, odd_map_g(problem, x).norm(), iterations, SolveMethod::Bisection,
                     config.tol);
}

// k >= 2: damped Gauss-Newton in the tangent space with central differences
// and reprojection onto the sphere after every step.
SolveResult solve_by_gauss_newton(const OddMapProblem& problem, const Vec& x0,
                                  const SolverConfig& config) {
  Vec x = x0;
  Vec gx = odd_map_g(problem, x);
  int iterations = 0;
  while (iterations < config.iters && gx.norm() > 1e-3 * config.tol) {
    ++iterations;
    const Mat tangent = tangent_basis(x);
    Mat jac(gx.size(), tangent.cols());
    for (Eigen::Index c = 0; c < tangent.cols(); ++c) {
      const Vec plus = unit(x + config.fd_step * tangent.col(c));
      const Vec minus = unit(x - config.fd_step * tangent.col(c));
      jac.col(c) = (odd_map_g(problem, plus) - odd_map_g(problem, minus)) / (2.0 * config.fd_step);
    }
    Vec delta = tangent * jac.completeOrthogonalDecomposition().solve(-gx);
    const double length = delta.norm();
    if (!(length > 0.0) || !std::isfinite(length)) break;
    if (length > 0.5) delta *= 0.5 / length;

    bool improved = false;
    for (double damping = 1.0; damping > 1e-6; damping *= 0.5) {
      const Vec candidate = unit(x + damping * delta);
      const Vec g_candidate = odd_map_g(problem, candidate);
      if (g_candidate.norm() < gx.norm()) {
        x = candidate;
        gx = g_candidate;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return make_result(problem, x, gx.norm(), iterations, SolveMethod::GaussNewton, config.tol);
}

}  // namespace

OddMapProblem OddMapProblem::make(FunctionalSpec spec, Embedding embedding, bool best_effort) {
  const int n = static_cast<int>(spec.ambient_dim()) - 1;
  if (n < 1) throw Error(ErrorCode::InvalidInput, "functional must act on loops in S^n, n >= 1");
  require_grid(spec.m());
  if (spec.k() > n - 1 && !best_effort) {
    throw Error(ErrorCode::InvalidInput,
                "k = " + std::to_string(spec.k()) + " exceeds n - 1 = " + std::to_string(n - 1) +
                    "; a zero is only guaranteed for k <= n - 1 (use best-effort mode)");
  }
  if (const auto* gamma = std::get_if<GammaEmbedding>(&embedding)) {
    if (gamma->omega.manifold() != Manifold::Sphere || gamma->omega.n() != n ||
        gamma->omega.m() != spec.m()) {
      throw Error(ErrorCode::GridMismatch, "omega must be a loop on S^n sampled on the spec grid");
    }
    if (!is_tf(gamma->omega)) {
      throw Error(ErrorCode::DegenerateInput, "omega must be a to-and-fro loop");
    }
  }
  return OddMapProblem(std::move(spec), std::move(embedding), n, best_effort);
}

Loop OddMapProblem::embed(const Vec& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DegenerateInput, "x must have n coordinates");
  const SpherePoint point = lift_to_equator(x);
  if (const auto* gamma = std::get_if<GammaEmbedding>(&embedding_)) {
    return embed_gamma(gamma->omega, point);
  }
  return embed_alpha(point, m());
}

Vec odd_map_g(const OddMapProblem& problem, const Vec& x) {
  return eval_f(problem.spec(), problem.embed(x)) - eval_f(problem.spec(), problem.embed(-x));
}

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::Bisection: return "Bisection";
    case SolveMethod::GaussNewton: return "GaussNewton";
    case SolveMethod::GridOnly: return "GridOnly";
  }
  return "GridOnly";
}

SolveMethod solve_method_from_string(std::string_view name) {
  if (name == "Bisection") return SolveMethod::Bisection;
  if (name == "GaussNewton") return SolveMethod::GaussNewton;
  if (name == "GridOnly") return SolveMethod::GridOnly;
  throw Error(ErrorCode::InvalidInput, "unknown method '" + std::string(name) + "'");
}

std::vector<Vec> hemisphere_grid(int dim, int points) {
  if (dim < 1 || points < 1) throw Error(ErrorCode::InvalidInput, "bad hemisphere grid request");
  std::vector<Vec> grid;
  if (dim == 1) {
    grid.push_back(Vec::Ones(1));
    return grid;
  }
  if (dim == 2) {
    for (int i = 0; i < points; ++i) {
      const double phi = std::numbers::pi * i / points;
      Vec p(2);
      p << std::cos(phi), std::sin(phi);
      grid.push_back(p);
    }
    return grid;
  }
  if (dim == 3) {
    // Fibonacci lattice restricted to z > 0.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < points; ++i) {
      const double z = (i + 0.5) / points;
      const double r = std::sqrt(1.0 - z * z);
      double frac = i / golden;
      frac -= std::floor(frac);
      const double theta = 2.0 * std::numbers::pi * frac;
      Vec p(3);
      p << r * std::cos(theta), r * std::sin(theta), z;
      grid.push_back(p);
    }
    return grid;
  }
  // Tensor grid in hyperspherical angles, all inside (0, pi) so the last
  // coordinate is positive.
  const int angles = dim - 1;
  const int per_axis =
      std::max(2, static_cast<int>(std::lround(std::pow(points, 1.0 / angles))));
  std::vector<int> index(static_cast<std::size_t>(angles), 0);
  while (true) {
    Vec p(dim);
    double sin_product = 1.0;
    for (int a = 0; a < angles; ++a) {
      const double theta = std::numbers::pi * (index[static_cast<std::size_t>(a)] + 0.5) / per_axis;
      p[a] = sin_product * std::cos(theta);
      sin_product *= std::sin(theta);
    }
    p[dim - 1] = sin_product;
    grid.push_back(p);
    int a = 0;
    while (a < angles && ++index[static_cast<std::size_t>(a)] == per_axis) {
      index[static_cast<std::size_t>(a)] = 0;
      ++a;
    }
    if (a == angles) break;
  }
  return grid;
}

SolveResult solve_bu(const OddMapProblem& problem, const SolverConfig& config) {
  if (!problem.guaranteed() && !problem.best_effort()) {
    throw Error(ErrorCode::InvalidInput, "k > n - 1 requires best-effort mode");
  }
  const std::vector<Candidate> ranked = ranked_grid(problem, config);
  const Candidate& best = ranked.front();
  if (best.g_norm <= config.tol || problem.n() == 1) {
    return make_result(problem, best.x, best.g_norm, 0, SolveMethod::GridOnly, config.tol);
  }

  if (problem.k() == 1) {
    SolveResult result = solve_by_bisection(problem, best.x, config);
    if (result.converged) return result;
    return result.g_residual < best.g_norm
               ? result
               : make_result(problem, best.x, best.g_norm, 0, SolveMethod::GridOnly, config.tol);
  }

  std::optional<SolveResult> closest;
  const int starts = std::min<int>(std::max(1, config.starts), static_cast<int>(ranked.size()));
  for (int s = 0; s < starts; ++s) {
    SolveResult result = solve_by_gauss_newton(problem, ranked[static_cast<std::size_t>(s)].x, config);
    if (result.converged) return result;
    if (!closest || result.g_residual < closest->g_residual) closest = std::move(result);
  }
  if (closest->g_residual < best.g_norm) return *closest;
  return make_result(problem, best.x, best.g_norm, 0, SolveMethod::GridOnly, config.tol);
}

CertificateCheck check_certificate(const FunctionalSpec& spec, const CoincidenceCertificate& cert) {
  CertificateCheck check;
  check.residual = coincidence_gap(spec, cert.loop).norm();
  check.tf_dist = tf_distance(cert.loop);
  check.consistent = std::abs(check.residual - cert.residual) <= 1e-12 &&
                     std::abs(check.tf_dist - cert.tf_dist) <= 1e-12;
  check.off_tf = check.tf_dist > kCertificateTfFloor;
  return check;
}

std::vector<Vec> fiber_grid(int d, int points) {
  if (d < 0) throw Error(ErrorCode::InvalidInput, "fiber sphere dimension must be >= 0");
  std::vector<Vec> grid;
  if (d == 0) {
    grid.push_back(Vec::Ones(1));
    grid.push_back(-Vec::Ones(1));
    return grid;
  }
  if (points < 1) throw Error(ErrorCode::InvalidInput, "need at least one fiber");
  if (d == 1) {
    for (int i = 0; i < points; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / points;
      Vec p(2);
      p << std::cos(phi), std::sin(phi);
      grid.push_back(p);
    }
    return grid;
  }
  if (d == 2) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < points; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / points;
      const double r = std::sqrt(1.0 - z * z);
      double frac = i / golden;
      frac -= std::floor(frac);
      const double theta = 2.0 * std::numbers::pi * frac;
      Vec p(3);
      p << r * std::cos(theta), r * std::sin(theta), z;
      grid.push_back(p);
    }
    return grid;
  }
  // Both hemispheres of the tensor grid.
  for (const Vec& p : hemisphere_grid(d + 1, std::max(1, points / 2))) {
    grid.push_back(p);
    grid.push_back(-p);
  }
  return grid;
}

FamilyReport family_demo(int d, const FunctionalSpec& spec, const TfSphereParams& params,
                         const FamilyConfig& config) {
  if (params.d() != d) throw Error(ErrorCode::InvalidInput, "params built for a different d");
  const int n = static_cast<int>(spec.ambient_dim()) - 1;
  if (spec.k() > n - 1) {
    throw Error(ErrorCode::InvalidInput, "the family demonstration needs k <= n - 1");
  }
  const int points = config.fibers > 0 ? config.fibers : (d == 1 ? 64 : 256);
  const std::vector<Vec> cs = fiber_grid(d, points);

  FamilyReport report;
  report.fibers.resize(cs.size());
  SolverConfig inner = config.solver;
  const int outer_threads = inner.threads;
  inner.threads = 1;
  parallel_for(cs.size(), outer_threads, [&](std::size_t i) {
    FiberResult& fiber = report.fibers[i];
    fiber.c = cs[i];
    try {
      Loop omega = tf_sphere_embed(cs[i], params, n, spec.m());
      const OddMapProblem problem = OddMapProblem::make(spec, GammaEmbedding{std::move(omega)});
      fiber.result = solve_bu(problem, inner);
      fiber.certified = fiber.result->converged &&
                        fiber.result->certificate.residual <= inner.tol &&
                        fiber.result->certificate.tf_dist > kCertificateTfFloor;
    } catch (const std::exception& e) {
      fiber.error = e.what();
    }
  });
  for (const auto& fiber : report.fibers) {
    if (fiber.certified) ++report.certified;
    if (fiber.result) {
      report.max_residual = std::max(report.max_residual, fiber.result->certificate.residual);
    }
  }
  return report;
}

}  // namespace loopbu
