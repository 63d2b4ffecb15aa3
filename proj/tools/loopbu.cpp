#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopbu/coincidence.hpp"
#include "loopbu/io.hpp"
#include "loopbu/parallel.hpp"

using namespace loopbu;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoConvergence = 3;

Vec to_vec(const std::vector<double>& values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return v;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_json(const std::string& out, const json& doc) {
  const std::string text = doc.dump() + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

struct PushoffArgs {
  std::string in, out;
  double s = 1.0;
  bool swap = false;
};

int cmd_pushoff(const PushoffArgs& a) {
  if (!(a.s >= 0.0 && a.s <= 1.0)) throw Error(ErrorCode::InvalidInput, "--s must lie in [0, 1]");
  const Loop alpha = load_loop(a.in);
  if (alpha.manifold() != Manifold::Sphere) {
    throw Error(ErrorCode::InvalidInput, "pushoff needs a sphere loop");
  }
  PushoffArcs arcs = default_pushoff_arcs(alpha.n());
  if (a.swap) arcs = arcs.swapped();
  const Loop pushed = pushoff_homotopy(alpha, a.s, arcs);
  std::cout << "tf_distance before: " << format_double(tf_distance(alpha)) << "\n";
  std::cout << "tf_distance after: " << format_double(tf_distance(pushed)) << "\n";
  write_json(a.out, loop_to_json(pushed));
  return kExitOk;
}

struct EmbedArgs {
  std::string kind = "alpha", omega, out;
  std::vector<double> x, c;
  double lambda = 0.0;
  bool lambda_set = false;
  bool rotate = false;
  int n = 2, d = 1, m = 256;
};

int cmd_embed(const EmbedArgs& a) {
  require_grid(a.m);
  Loop loop = [&]() -> Loop {
    if (a.kind == "tf") {
      if (a.c.empty()) throw Error(ErrorCode::InvalidInput, "--kind tf needs --c");
      return tf_sphere_embed(to_vec(a.c), TfSphereParams::defaults(a.d), a.n, a.m);
    }
    if (a.x.empty()) throw Error(ErrorCode::InvalidInput, "--kind " + a.kind + " needs --x");
    const SpherePoint x = normalize(to_vec(a.x));
    if (a.kind == "alpha") return a.lambda_set ? h_lambda(x, a.lambda, a.m) : embed_alpha(x, a.m);
    if (a.kind == "beta") return embed_beta(x, a.m, a.rotate);
    if (a.kind == "gamma") {
      if (a.omega.empty()) throw Error(ErrorCode::InvalidInput, "--kind gamma needs --omega");
      return embed_gamma(load_loop(a.omega), x);
    }
    throw Error(ErrorCode::InvalidInput, "unknown --kind '" + a.kind + "'");
  }();
  std::cout << "tf_distance: " << format_double(tf_distance(loop)) << "\n";
  write_json(a.out, loop_to_json(loop));
  return kExitOk;
}

struct SolveArgs {
  std::string spec, embedding = "alpha", omega, out;
  int n = 2, m = 256, grid = 4096, iters = 100;
  double tol = 1e-8;
  bool best_effort = false;
};

int cmd_solve(const SolveArgs& a) {
  require_grid(a.m);
  if (!(a.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "--tol must be positive");
  FunctionalSpec spec = load_functional_spec(a.spec, a.m, a.n + 1);
  Embedding embedding = AlphaEmbedding{};
  if (a.embedding == "gamma") {
    if (a.omega.empty()) throw Error(ErrorCode::InvalidInput, "--embedding gamma needs --omega");
    embedding = GammaEmbedding{load_loop(a.omega)};
  } else if (a.embedding != "alpha") {
    throw Error(ErrorCode::InvalidInput, "unknown --embedding '" + a.embedding + "'");
  }
  const OddMapProblem problem = OddMapProblem::make(std::move(spec), std::move(embedding), a.best_effort);
  SolverConfig config;
  config.tol = a.tol;
  config.grid_points = a.grid;
  config.iters = a.iters;
  const SolveResult result = solve_bu(problem, config);
  const CoincidenceCertificate& cert = result.certificate;
  std::cout << "method: " << to_string(cert.method) << "\n";
  std::cout << "residual: " << format_double(cert.residual) << "\n";
  std::cout << "tf_distance: " << format_double(cert.tf_dist) << "\n";
  write_json(a.out, certificate_to_json(cert));
  if (!result.converged) {
    std::cerr << "no convergence: best residual " << format_double(cert.residual) << "\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

struct FamilyArgs {
  std::string spec, out;
  int d = 1, n = 2, m = 256, fibers = 0, grid = 4096;
  double tol = 1e-8;
};

int cmd_family(const FamilyArgs& a) {
  require_grid(a.m);
  if (!(a.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "--tol must be positive");
  const FunctionalSpec spec = load_functional_spec(a.spec, a.m, a.n + 1);
  FamilyConfig config;
  config.fibers = a.fibers;
  config.solver.tol = a.tol;
  config.solver.grid_points = a.grid;
  const FamilyReport report = family_demo(a.d, spec, TfSphereParams::defaults(a.d), config);
  std::cout << "certified: " << report.certified << "/" << report.fibers.size() << "\n";
  std::cout << "max_residual: " << format_double(report.max_residual) << "\n";
  write_json(a.out, family_report_to_json(report));
  return report.certified == static_cast<int>(report.fibers.size()) ? kExitOk : kExitFailed;
}

struct LinearFamilyArgs {
  std::string betas, out;
  int basis = 4;
  double kernel_tol = 1e-10;
};

int cmd_linear_family(const LinearFamilyArgs& a) {
  if (a.basis < 1) throw Error(ErrorCode::InvalidInput, "--basis must be >= 1");
  if (!(a.kernel_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "--kernel-tol must be positive");
  const std::vector<SampledPath> betas = load_betas(a.betas);
  const int m = betas.front().m();
  require_grid(m);
  const ReducedSystem system = build_reduced_system(betas, a.basis);
  const std::vector<Vec> kernel = null_space(system, a.kernel_tol);

  std::vector<FunctionalComponent> components;
  for (const auto& beta : betas) components.emplace_back(SquaredDistanceToPath{beta});
  const FunctionalSpec spec = FunctionalSpec::make(std::move(components), m, system.n);
  const double threshold = 5.0 / (static_cast<double>(m) * m) * path_scale(betas);

  json basis = json::array(), loops = json::array(), residuals = json::array(),
       tf = json::array();
  bool ok = true;
  for (const Vec& c : kernel) {
    const Loop alpha = build_alpha_x(c, system, m);
    const double r = coincidence_gap(spec, alpha).norm();
    ok = ok && r <= threshold;
    basis.push_back(vec_to_json(c));
    loops.push_back(loop_to_json(alpha));
    residuals.push_back(r);
    tf.push_back(tf_distance(alpha));
  }
  std::cout << "kernel_dim: " << kernel.size() << "\n";
  std::cout << "threshold: " << format_double(threshold) << "\n";
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    std::cout << "residual[" << i << "]: " << format_double(residuals[i].get<double>()) << "\n";
  }
  json doc;
  doc["kernel_dim"] = kernel.size();
  doc["m"] = m;
  doc["threshold"] = threshold;
  doc["basis"] = std::move(basis);
  doc["loops"] = std::move(loops);
  doc["residuals"] = std::move(residuals);
  doc["tf_distances"] = std::move(tf);
  write_json(a.out, doc);
  return ok ? kExitOk : kExitFailed;
}

struct VerifyArgs {
  std::string loop, spec;
  double tol = 1e-8;
};

int cmd_verify(const VerifyArgs& a) {
  if (!(a.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "--tol must be positive");
  const Loop loop = load_loop(a.loop);
  const FunctionalSpec spec = load_functional_spec(a.spec, loop.m(), loop.ambient_dim());
  const double gap = coincidence_gap(spec, loop).norm();
  const double tf = tf_distance(loop);
  std::cout << "gap: " << format_double(gap) << "\n";
  std::cout << "tf_distance: " << format_double(tf) << "\n";
  return gap <= a.tol && tf > a.tol ? kExitOk : kExitFailed;
}

struct ExportArgs {
  std::string in, out;
};

int cmd_export_plot(const ExportArgs& a) {
  const Loop loop = load_loop(a.in);
  std::ostringstream csv;
  csv << "t";
  for (Eigen::Index j = 0; j < loop.ambient_dim(); ++j) csv << ",x" << j + 1;
  csv << "\n";
  for (int i = 0; i <= loop.m(); ++i) {
    csv << format_double(static_cast<double>(i) / loop.m());
    const Vec& p = loop[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < p.size(); ++j) csv << "," << format_double(p[j]);
    csv << "\n";
  }
  if (a.out.empty() || a.out == "-") {
    std::cout << csv.str();
  } else {
    write_text_file(a.out, csv.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loop-space coincidence toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = -1;
  app.add_option("--threads", threads, "Worker threads (0 = auto; default from LOOPBU_THREADS)");

  PushoffArgs pushoff;
  auto* p = app.add_subcommand("pushoff", "Push a loop off the to-and-fro set");
  p->add_option("--in", pushoff.in, "Loop JSON")->required();
  p->add_option("--s", pushoff.s, "Homotopy parameter in [0, 1]");
  p->add_option("--out", pushoff.out, "Output loop JSON (default stdout)");
  p->add_flag("--swap", pushoff.swap, "Exchange the two arcs");

  EmbedArgs embed;
  auto* e = app.add_subcommand("embed", "Build an embedding loop");
  e->add_option("--kind", embed.kind, "alpha | beta | gamma | tf");
  e->add_option("--x", embed.x, "Point of the sphere, comma separated")->delimiter(',');
  auto* lambda = e->add_option("--lambda", embed.lambda, "Base point parameter for alpha");
  e->add_option("--omega", embed.omega, "To-and-fro loop JSON for gamma");
  e->add_flag("--rotate", embed.rotate, "Carry the beta loop to the base point s0");
  e->add_option("--c", embed.c, "Point of S^d for tf, comma separated")->delimiter(',');
  e->add_option("--d", embed.d, "Dimension of the tf parameter sphere");
  e->add_option("--n", embed.n, "Sphere dimension for tf");
  e->add_option("--m", embed.m, "Grid size");
  e->add_option("--out", embed.out, "Output loop JSON (default stdout)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Find a coincidence loop");
  s->add_option("--spec", solve.spec, "Functional spec TOML")->required();
  s->add_option("--embedding", solve.embedding, "alpha | gamma");
  s->add_option("--omega", solve.omega, "To-and-fro loop JSON for gamma");
  s->add_option("--n", solve.n, "Sphere dimension");
  s->add_option("--m", solve.m, "Grid size");
  s->add_option("--tol", solve.tol, "Residual tolerance");
  s->add_option("--grid", solve.grid, "Hemisphere grid points");
  s->add_option("--iters", solve.iters, "Iteration cap");
  s->add_flag("--best-effort", solve.best_effort, "Allow k >= n");
  s->add_option("--out", solve.out, "Output certificate JSON (default stdout)");

  FamilyArgs family;
  auto* f = app.add_subcommand("family", "Solve over a sphere of to-and-fro loops");
  f->add_option("--spec", family.spec, "Functional spec TOML")->required();
  f->add_option("--d", family.d, "Parameter sphere dimension");
  f->add_option("--n", family.n, "Sphere dimension");
  f->add_option("--m", family.m, "Grid size");
  f->add_option("--fibers", family.fibers, "Number of fibers (0 = default)");
  f->add_option("--tol", family.tol, "Residual tolerance");
  f->add_option("--grid", family.grid, "Hemisphere grid points");
  f->add_option("--out", family.out, "Output report JSON (default stdout)");

  LinearFamilyArgs linear;
  auto* l = app.add_subcommand("linear-family", "Kernel family of the reduced linear system");
  l->add_option("--betas", linear.betas, "Betas JSON")->required();
  l->add_option("--basis", linear.basis, "Number of basis functions");
  l->add_option("--kernel-tol", linear.kernel_tol, "Relative singular value cutoff");
  l->add_option("--out", linear.out, "Output family JSON (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a coincidence loop");
  v->add_option("--loop", verify.loop, "Loop JSON")->required();
  v->add_option("--spec", verify.spec, "Functional spec TOML")->required();
  v->add_option("--tol", verify.tol, "Tolerance");

  ExportArgs plot;
  auto* x = app.add_subcommand("export-plot", "Write loop samples as CSV");
  x->add_option("--in", plot.in, "Loop JSON")->required();
  x->add_option("--out", plot.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (threads >= 0) {
      const std::string value = std::to_string(threads);
      setenv("LOOPBU_THREADS", value.c_str(), 1);
    }
    embed.lambda_set = lambda->count() > 0;
    if (p->parsed()) return cmd_pushoff(pushoff);
    if (e->parsed()) return cmd_embed(embed);
    if (s->parsed()) return cmd_solve(solve);
    if (f->parsed()) return cmd_family(family);
    if (l->parsed()) return cmd_linear_family(linear);
    if (v->parsed()) return cmd_verify(verify);
    if (x->parsed()) return cmd_export_plot(plot);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.code() == ErrorCode::NoConvergence ? kExitNoConvergence : kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
