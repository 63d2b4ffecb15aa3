#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "loopbu/coincidence.hpp"
#include "support.hpp"

using namespace loopbu;
using loopbu::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> ramp_weights(int m) {
  std::vector<double> w;
  for (int i = 0; i <= m; ++i) w.push_back(static_cast<double>(i) / m);
  return w;
}

// f(alpha) = int t alpha_0(t) dt on loops of S^2.
OddMapProblem analytic_problem(int m) {
  FunctionalSpec spec = FunctionalSpec::make({WeightedCoordinate{0, ramp_weights(m)}}, m, 3);
  return OddMapProblem::make(std::move(spec), AlphaEmbedding{});
}

FunctionalSpec random_sqdist_spec(int k, int dim, int m, std::uint64_t seed) {
  std::vector<FunctionalComponent> components;
  for (int j = 0; j < k; ++j) {
    components.emplace_back(SquaredDistanceToPath{random_trig_path(dim, m, 3, 1.0, seed + j)});
  }
  return FunctionalSpec::make(std::move(components), m, dim);
}

Vec xy(double phi) {
  Vec x(2);
  x << std::cos(phi), std::sin(phi);
  return x;
}

}  // namespace

TEST(OddMap, AnalyticValue) {
  const OddMapProblem problem = analytic_problem(256);
  for (int i = 0; i < 16; ++i) {
    const double phi = 2 * kPi * i / 16;
    EXPECT_NEAR(odd_map_g(problem, xy(phi))[0], -std::cos(phi) / kPi, 2e-3);
  }
}

TEST(OddMap, Oddness) {
  Rng rng(51);
  const OddMapProblem a = analytic_problem(128);
  const OddMapProblem b = OddMapProblem::make(random_sqdist_spec(2, 4, 64, 3), AlphaEmbedding{});
  const OddMapProblem c = OddMapProblem::make(
      random_sqdist_spec(1, 3, 64, 9),
      GammaEmbedding{tf_sphere_embed(rng.unit(2), TfSphereParams::defaults(1), 2, 64)});
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x2 = rng.unit(2);
    const Vec x3 = rng.unit(3);
    EXPECT_LT((odd_map_g(a, x2) + odd_map_g(a, -x2)).norm(), 1e-12);
    EXPECT_LT((odd_map_g(b, x3) + odd_map_g(b, -x3)).norm(), 1e-12);
    EXPECT_LT((odd_map_g(c, x2) + odd_map_g(c, -x2)).norm(), 1e-12);
  }
}

TEST(OddMap, SymmetricBetaGivesZero) {
  const int m = 64;
  const SampledPath beta = sample_path(
      [](double t) {
        Vec p(3);
        p << std::cos(2 * kPi * t), 0.5, t * (1 - t);
        return p;
      },
      m);
  const OddMapProblem problem =
      OddMapProblem::make(FunctionalSpec::make({SquaredDistanceToPath{beta}}, m, 3), AlphaEmbedding{});
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_LT(odd_map_g(problem, rng.unit(2)).norm(), 1e-12);
  }
}

TEST(OddMap, RegimeCheck) {
  const FunctionalSpec spec = random_sqdist_spec(2, 3, 64, 4);
  EXPECT_THROW(OddMapProblem::make(spec, AlphaEmbedding{}), Error);
  EXPECT_NO_THROW(OddMapProblem::make(spec, AlphaEmbedding{}, true));
}

TEST(HemisphereGrid, LastNonzeroCoordinatePositive) {
  for (int dim : {1, 2, 3, 4, 5}) {
    const std::vector<Vec> grid = hemisphere_grid(dim, 500);
    EXPECT_FALSE(grid.empty());
    for (const Vec& p : grid) {
      EXPECT_NEAR(p.norm(), 1.0, 1e-12);
      Eigen::Index last = dim - 1;
      while (last > 0 && p[last] == 0.0) --last;
      EXPECT_GT(p[last], 0.0);
    }
  }
}

TEST(SolveBu, AnalyticZero) {
  const OddMapProblem problem = analytic_problem(256);
  const SolveResult result = solve_bu(problem);
  ASSERT_TRUE(result.converged);
  EXPECT_LT(std::abs(result.certificate.x[0]), 1e-6);
  EXPECT_LT(result.certificate.residual, 1e-8);
  Vec point = Vec::Zero(3);
  point[1] = result.certificate.x[1] > 0 ? 1.0 : -1.0;
  EXPECT_LT(max_node_distance(result.certificate.loop, embed_alpha(SpherePoint::from_unit(point), 256)),
            1e-6);
}

TEST(SolveBu, SymmetricSpecReturnsFirstGridPoint) {
  const int m = 64;
  const SampledPath beta = sample_path([](double) { return Vec::Constant(3, 0.2); }, m);
  const OddMapProblem problem =
      OddMapProblem::make(FunctionalSpec::make({SquaredDistanceToPath{beta}}, m, 3), AlphaEmbedding{});
  const SolveResult result = solve_bu(problem);
  EXPECT_TRUE(result.converged);
  EXPECT_EQ(result.certificate.method, SolveMethod::GridOnly);
  EXPECT_EQ(result.certificate.residual, 0.0);
  EXPECT_EQ(result.certificate.x, hemisphere_grid(2, SolverConfig{}.grid_points).front());
}

TEST(SolveBu, BisectionFindsGenericZero) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const OddMapProblem problem = OddMapProblem::make(random_sqdist_spec(1, 3, 128, seed), AlphaEmbedding{});
    const SolveResult result = solve_bu(problem);
    ASSERT_TRUE(result.converged) << "seed " << seed;
    EXPECT_LT(result.certificate.residual, 1e-8);
    const CertificateCheck check = check_certificate(problem.spec(), result.certificate);
    EXPECT_TRUE(check.consistent);
    EXPECT_TRUE(check.off_tf);
  }
}

TEST(SolveBu, GaussNewtonFindsGenericZero) {
  const OddMapProblem problem = OddMapProblem::make(random_sqdist_spec(2, 4, 64, 21), AlphaEmbedding{});
  const SolveResult result = solve_bu(problem);
  ASSERT_TRUE(result.converged);
  EXPECT_LT(result.certificate.residual, 1e-8);
  EXPECT_NEAR(result.certificate.x.norm(), 1.0, 1e-12);
  EXPECT_TRUE(check_certificate(problem.spec(), result.certificate).consistent);
}

TEST(SolveBu, AntipodalCertificateIsTheReversedLoop) {
  const OddMapProblem problem = OddMapProblem::make(random_sqdist_spec(1, 3, 128, 5), AlphaEmbedding{});
  const SolveResult result = solve_bu(problem);
  ASSERT_TRUE(result.converged);
  const Loop other = problem.embed(-result.certificate.x);
  EXPECT_LT(max_node_distance(other, star(result.certificate.loop)), 1e-9);
  EXPECT_LT(odd_map_g(problem, -result.certificate.x).norm(), 1e-8);
}

TEST(SolveBu, Deterministic) {
  const OddMapProblem problem = OddMapProblem::make(random_sqdist_spec(1, 3, 64, 8), AlphaEmbedding{});
  SolverConfig one;
  one.threads = 1;
  SolverConfig many;
  many.threads = 4;
  const SolveResult a = solve_bu(problem, one);
  const SolveResult b = solve_bu(problem, many);
  const SolveResult c = solve_bu(problem, one);
  EXPECT_EQ(a.certificate.x, b.certificate.x);
  EXPECT_EQ(a.certificate.x, c.certificate.x);
  EXPECT_EQ(a.certificate.residual, c.certificate.residual);
  EXPECT_EQ(a.certificate.loop, c.certificate.loop);
  EXPECT_EQ(a.certificate.iterations, c.certificate.iterations);
}

TEST(SolveBu, BestEffortNeverSilent) {
  const OddMapProblem problem =
      OddMapProblem::make(random_sqdist_spec(2, 3, 64, 31), AlphaEmbedding{}, true);
  const SolveResult result = solve_bu(problem);
  const CertificateCheck check = check_certificate(problem.spec(), result.certificate);
  EXPECT_TRUE(check.consistent);
  if (result.converged) {
    EXPECT_LE(result.g_residual, SolverConfig{}.tol);
  } else {
    EXPECT_GT(result.g_residual, SolverConfig{}.tol);
  }
}

TEST(FiberGrid, Counts) {
  EXPECT_EQ(fiber_grid(0, 0).size(), 2u);
  EXPECT_EQ(fiber_grid(1, 64).size(), 64u);
  for (const Vec& c : fiber_grid(2, 100)) EXPECT_NEAR(c.norm(), 1.0, 1e-12);
  for (const Vec& c : fiber_grid(3, 100)) EXPECT_NEAR(c.norm(), 1.0, 1e-12);
}

TEST(FamilyDemo, SmallSweepCertifies) {
  const FunctionalSpec spec = random_sqdist_spec(1, 3, 64, 11);
  FamilyConfig config;
  config.fibers = 6;
  config.solver.tol = 1e-6;
  const FamilyReport report = family_demo(1, spec, TfSphereParams::defaults(1), config);
  EXPECT_EQ(report.fibers.size(), 6u);
  EXPECT_EQ(report.certified, 6);
  EXPECT_LT(report.max_residual, 1e-6);
  for (const auto& fiber : report.fibers) {
    ASSERT_TRUE(fiber.result);
    const CertificateCheck check = check_certificate(spec, fiber.result->certificate);
    EXPECT_TRUE(check.consistent);
    EXPECT_TRUE(check.off_tf);
  }
}

TEST(FamilyDemo, SymmetricSpecCertifiesAtFirstGridPoint) {
  const int m = 64;
  const SampledPath beta = sample_path([](double) { return Vec::Constant(3, -0.4); }, m);
  const FunctionalSpec spec = FunctionalSpec::make({SquaredDistanceToPath{beta}}, m, 3);
  FamilyConfig config;
  config.fibers = 8;
  const FamilyReport report = family_demo(1, spec, TfSphereParams::defaults(1), config);
  EXPECT_EQ(report.certified, 8);
  for (const auto& fiber : report.fibers) {
    EXPECT_EQ(fiber.result->certificate.method, SolveMethod::GridOnly);
    EXPECT_EQ(fiber.result->certificate.residual, 0.0);
  }
}

TEST(FamilyDemo, ZeroDimensionalFamilyIsTwoSolves) {
  const FunctionalSpec spec = random_sqdist_spec(1, 3, 64, 12);
  const TfSphereParams params = TfSphereParams::defaults(0);
  const FamilyReport report = family_demo(0, spec, params, {});
  ASSERT_EQ(report.fibers.size(), 2u);
  for (const auto& fiber : report.fibers) {
    const OddMapProblem problem =
        OddMapProblem::make(spec, GammaEmbedding{tf_sphere_embed(fiber.c, params, 2, 64)});
    const SolveResult direct = solve_bu(problem);
    ASSERT_TRUE(fiber.result);
    EXPECT_EQ(fiber.result->certificate.x, direct.certificate.x);
  }
}

TEST(FamilyDemo, FiberErrorsDoNotAbortTheSweep) {
  const FunctionalSpec spec = random_sqdist_spec(1, 3, 64, 13);
  std::vector<TfSphereParams::BasisFunction> basis = {[](double u) { return std::sin(kPi * u); },
                                                      [](double u) { return std::sin(kPi * u); }};
  const TfSphereParams dependent = TfSphereParams::make(1, 1.0, basis);
  FamilyConfig config;
  config.fibers = 4;
  const FamilyReport report = family_demo(1, spec, dependent, config);
  EXPECT_EQ(report.fibers.size(), 4u);
  EXPECT_EQ(report.certified, 0);
  for (const auto& fiber : report.fibers) EXPECT_FALSE(fiber.error.empty());
}
