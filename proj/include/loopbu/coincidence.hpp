#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loopbu/embeddings.hpp"
#include "loopbu/functionals.hpp"

namespace loopbu {

struct AlphaEmbedding {};
struct GammaEmbedding {
  Loop omega;  // to-and-fro loop based at s0
};
using Embedding = std::variant<AlphaEmbedding, GammaEmbedding>;

// Searching coincidences f(e(x)) = f(e(x)*) over x in S^{n-1} for an
// equivariant embedding e: S^{n-1} -> loops on S^n. The search parameter x is
// an n-vector; it is placed on the equator of S^n as (x, 0).
class OddMapProblem {
 public:
  // Requires k <= n - 1 unless best_effort is set.
  static OddMapProblem make(FunctionalSpec spec, Embedding embedding, bool best_effort = false);

  const FunctionalSpec& spec() const noexcept { return spec_; }
  const Embedding& embedding() const noexcept { return embedding_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return spec_.m(); }
  int k() const noexcept { return spec_.k(); }
  bool best_effort() const noexcept { return best_effort_; }
  bool guaranteed() const noexcept { return k() <= n_ - 1; }

  Loop embed(const Vec& x) const;

 private:
  OddMapProblem(FunctionalSpec spec, Embedding embedding, int n, bool best_effort)
      : spec_(std::move(spec)), embedding_(std::move(embedding)), n_(n), best_effort_(best_effort) {}
  FunctionalSpec spec_;
  Embedding embedding_;
  int n_;
  bool best_effort_;
};

// g(x) = f(e(x)) - f(e(-x)); odd in x.
Vec odd_map_g(const OddMapProblem& problem, const Vec& x);

enum class SolveMethod { Bisection, GaussNewton, GridOnly };
std::string_view to_string(SolveMethod method);
SolveMethod solve_method_from_string(std::string_view name);

struct SolverConfig {
  double tol = 1e-8;
  int iters = 100;
  int grid_points = 4096;
  double fd_step = 1e-5;
  // Gauss-Newton restarts from the best grid points, in order.
  int starts = 8;
  int threads = 0;
};

struct CoincidenceCertificate {
  Vec x;  // point of S^{n-1}
  Loop loop;
  double residual = 0.0;  // |f(loop) - f(loop*)|
  double tf_dist = 0.0;
  int iterations = 0;
  SolveMethod method = SolveMethod::GridOnly;
};

struct SolveResult {
  CoincidenceCertificate certificate;
  double g_residual = 0.0;  // |g(x)|
  bool converged = false;   // false means NoConvergence: best candidate only
};

// Sample points of the hemisphere of S^{dim-1} whose last nonzero coordinate
// is positive.
std::vector<Vec> hemisphere_grid(int dim, int points);

SolveResult solve_bu(const OddMapProblem& problem, const SolverConfig& config = {});

// Recomputes residual and tf distance from the certificate's loop.
struct CertificateCheck {
  double residual = 0.0;
  double tf_dist = 0.0;
  bool consistent = false;  // both match the stored values within 1e-12
  bool off_tf = false;      // tf_dist > 1e-6
};
CertificateCheck check_certificate(const FunctionalSpec& spec, const CoincidenceCertificate& cert);

struct FiberResult {
  Vec c;  // point of S^d selecting omega_c
  std::optional<SolveResult> result;
  std::string error;
  bool certified = false;
};

struct FamilyReport {
  std::vector<FiberResult> fibers;
  int certified = 0;
  double max_residual = 0.0;
};

struct FamilyConfig {
  SolverConfig solver;
  // 0 picks 2 for d = 0, 64 for d = 1, 256 otherwise.
  int fibers = 0;
};

// Points of S^d used as fiber parameters.
std::vector<Vec> fiber_grid(int d, int points);

// Solves the gamma problem for each to-and-fro loop omega_c, c on a grid of
// S^d. Per-fiber failures are recorded and the sweep continues.
FamilyReport family_demo(int d, const FunctionalSpec& spec, const TfSphereParams& params,
                         const FamilyConfig& config = {});

}  // namespace loopbu
