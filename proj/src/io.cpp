#include "loopbu/io.hpp"

#include <fstream>
#include <sstream>

#include "loopbu/toml_lite.hpp"

namespace loopbu {

namespace {

[[noreturn]] void bad_field(std::string_view field, std::string_view what) {
  throw Error(ErrorCode::InvalidInput, std::string(field) + ": " + std::string(what));
}

const json& require(const json& doc, const char* field) {
  if (!doc.is_object()) bad_field("document", "expected a JSON object");
  const auto it = doc.find(field);
  if (it == doc.end()) bad_field(field, "missing");
  return *it;
}

int require_int(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number_integer()) bad_field(field, "expected an integer");
  return v.get<int>();
}

double require_number(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number()) bad_field(field, "expected a number");
  return v.get<double>();
}

std::vector<Vec> points_from_json(const json& value, std::string_view field) {
  if (!value.is_array()) bad_field(field, "expected an array of points");
  std::vector<Vec> points;
  points.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    points.push_back(vec_from_json(value[i], std::string(field) + "[" + std::to_string(i) + "]"));
  }
  return points;
}

json points_to_json(const std::vector<Vec>& points) {
  json out = json::array();
  for (const Vec& p : points) out.push_back(vec_to_json(p));
  return out;
}

Manifold manifold_from_string(const std::string& name) {
  if (name == "sphere") return Manifold::Sphere;
  if (name == "euclidean") return Manifold::Euclidean;
  bad_field("manifold", "expected \"sphere\" or \"euclidean\", got \"" + name + "\"");
}

double poly_eval(const std::vector<double>& coeffs, double t) {
  double value = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) value = value * t + *it;
  return value;
}

std::vector<double> doubles_from_json(const json& value, std::string_view field) {
  if (!value.is_array()) bad_field(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) bad_field(field, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

SampledPath beta_from_component(const json& c, std::string_view where, int m,
                                Eigen::Index ambient_dim, const std::filesystem::path& base_dir) {
  const int sources = static_cast<int>(c.contains("file")) + static_cast<int>(c.contains("samples")) +
                      static_cast<int>(c.contains("poly")) + static_cast<int>(c.contains("random"));
  if (sources != 1) {
    bad_field(where, "sqdist needs exactly one of file, samples, poly, random");
  }
  if (c.contains("file")) {
    if (!c["file"].is_string()) bad_field(where, "file must be a string");
    std::filesystem::path file = c["file"].get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    return load_path(file);
  }
  if (c.contains("samples")) {
    return SampledPath::make(points_from_json(c["samples"], std::string(where) + ".samples"));
  }
  if (c.contains("poly")) {
    const std::vector<Vec> coeffs = points_from_json(c["poly"], std::string(where) + ".poly");
    if (coeffs.empty()) bad_field(where, "poly needs at least one coefficient");
    for (const Vec& v : coeffs) {
      if (v.size() != ambient_dim) bad_field(where, "poly coefficients have the wrong dimension");
    }
    return sample_path(
        [&](double t) {
          Vec p = Vec::Zero(ambient_dim);
          for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * t + *it;
          return p;
        },
        m);
  }
  const json& r = c["random"];
  if (!r.is_object()) bad_field(where, "random must be an inline table");
  const std::uint64_t seed = r.value("seed", std::uint64_t{1});
  const int modes = r.value("modes", 3);
  const double amplitude = r.value("amplitude", 1.0);
  return random_trig_path(ambient_dim, m, modes, amplitude, seed);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + file.string());
  out << text;
  if (!out) throw Error(ErrorCode::InvalidInput, "failed writing " + file.string());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::InvalidInput, "JSON syntax error at line " + std::to_string(line) +
                                             ", column " + std::to_string(column));
  }
}

Vec vec_from_json(const json& value, std::string_view field) {
  if (!value.is_array()) bad_field(field, "expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) bad_field(field, "expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = value[i].get<double>();
  }
  return v;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json loop_to_json(const Loop& loop) {
  json doc;
  doc["manifold"] = loop.manifold() == Manifold::Sphere ? "sphere" : "euclidean";
  doc["n"] = loop.n();
  doc["m"] = loop.m();
  doc["base"] = vec_to_json(loop.base());
  doc["samples"] = points_to_json(loop.samples());
  return doc;
}

Loop loop_from_json(const json& doc) {
  const json& manifold = require(doc, "manifold");
  if (!manifold.is_string()) bad_field("manifold", "expected a string");
  const Manifold kind = manifold_from_string(manifold.get<std::string>());
  const int n = require_int(doc, "n");
  const int m = require_int(doc, "m");
  Vec base = vec_from_json(require(doc, "base"), "base");
  std::vector<Vec> samples = points_from_json(require(doc, "samples"), "samples");
  if (static_cast<long>(samples.size()) != static_cast<long>(m) + 1) {
    bad_field("samples", "expected m + 1 = " + std::to_string(m + 1) + " points, got " +
                             std::to_string(samples.size()));
  }
  return Loop::make(kind, n, std::move(samples), std::move(base));
}

std::string dump_loop(const Loop& loop) { return loop_to_json(loop).dump() + "\n"; }

Loop load_loop(const std::filesystem::path& file) {
  try {
    return loop_from_json(parse_json(read_text_file(file)));
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.detail());
  }
}

json path_to_json(const SampledPath& path) {
  json doc;
  doc["n"] = path.dim();
  doc["m"] = path.m();
  doc["samples"] = points_to_json(path.samples());
  return doc;
}

SampledPath path_from_json(const json& doc) {
  const int n = require_int(doc, "n");
  const int m = require_int(doc, "m");
  std::vector<Vec> samples = points_from_json(require(doc, "samples"), "samples");
  if (static_cast<long>(samples.size()) != static_cast<long>(m) + 1) {
    bad_field("samples", "expected m + 1 points");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != n) {
      bad_field("samples[" + std::to_string(i) + "]", "expected " + std::to_string(n) + " coordinates");
    }
  }
  return SampledPath::make(std::move(samples));
}

SampledPath load_path(const std::filesystem::path& file) {
  try {
    return path_from_json(parse_json(read_text_file(file)));
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.detail());
  }
}

std::vector<SampledPath> load_betas(const std::filesystem::path& file) {
  try {
    const json doc = parse_json(read_text_file(file));
    const json& list = require(doc, "betas");
    if (!list.is_array() || list.empty()) bad_field("betas", "expected a non-empty array");
    std::vector<SampledPath> betas;
    for (const auto& entry : list) betas.push_back(path_from_json(entry));
    return betas;
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.detail());
  }
}

json certificate_to_json(const CoincidenceCertificate& cert) {
  json doc;
  doc["x"] = vec_to_json(cert.x);
  doc["residual"] = cert.residual;
  doc["tf_distance"] = cert.tf_dist;
  doc["method"] = std::string(to_string(cert.method));
  doc["iterations"] = cert.iterations;
  doc["loop"] = loop_to_json(cert.loop);
  return doc;
}

CoincidenceCertificate certificate_from_json(const json& doc) {
  const json& method = require(doc, "method");
  if (!method.is_string()) bad_field("method", "expected a string");
  return CoincidenceCertificate{vec_from_json(require(doc, "x"), "x"),
                                loop_from_json(require(doc, "loop")),
                                require_number(doc, "residual"),
                                require_number(doc, "tf_distance"),
                                require_int(doc, "iterations"),
                                solve_method_from_string(method.get<std::string>())};
}

json family_report_to_json(const FamilyReport& report) {
  json certificates = json::array();
  for (const auto& fiber : report.fibers) {
    json entry = fiber.result ? certificate_to_json(fiber.result->certificate) : json::object();
    entry["c"] = vec_to_json(fiber.c);
    entry["certified"] = fiber.certified;
    if (!fiber.error.empty()) entry["error"] = fiber.error;
    certificates.push_back(std::move(entry));
  }
  json doc;
  doc["certificates"] = std::move(certificates);
  doc["summary"] = {{"fibers", report.fibers.size()},
                    {"certified", report.certified},
                    {"max_residual", report.max_residual}};
  return doc;
}

FunctionalSpec parse_functional_spec(std::string_view toml_text, int m, Eigen::Index ambient_dim,
                                     const std::filesystem::path& base_dir) {
  const json doc = parse_toml(toml_text);
  if (!doc.contains("component") || !doc["component"].is_array()) {
    bad_field("component", "expected one or more [[component]] blocks");
  }
  std::vector<FunctionalComponent> components;
  const json& list = doc["component"];
  for (std::size_t j = 0; j < list.size(); ++j) {
    const json& c = list[j];
    const std::string where = "component[" + std::to_string(j) + "]";
    if (!c.contains("kind") || !c["kind"].is_string()) bad_field(where, "missing kind");
    const std::string kind = c["kind"].get<std::string>();
    if (kind == "sqdist") {
      components.emplace_back(
          SquaredDistanceToPath{beta_from_component(c, where, m, ambient_dim, base_dir)});
    } else if (kind == "wcoord") {
      if (!c.contains("axis") || !c["axis"].is_number_integer()) bad_field(where, "missing axis");
      WeightedCoordinate wc;
      wc.axis = c["axis"].get<int>();
      if (c.contains("weights") == c.contains("weight_poly")) {
        bad_field(where, "wcoord needs exactly one of weights, weight_poly");
      }
      if (c.contains("weights")) {
        wc.weights = doubles_from_json(c["weights"], where + ".weights");
      } else {
        const std::vector<double> coeffs = doubles_from_json(c["weight_poly"], where + ".weight_poly");
        for (int i = 0; i <= m; ++i) wc.weights.push_back(poly_eval(coeffs, static_cast<double>(i) / m));
      }
      components.emplace_back(std::move(wc));
    } else {
      bad_field(where, "unknown kind \"" + kind + "\"");
    }
  }
  return FunctionalSpec::make(std::move(components), m, ambient_dim);
}

FunctionalSpec load_functional_spec(const std::filesystem::path& file, int m,
                                    Eigen::Index ambient_dim) {
  try {
    return parse_functional_spec(read_text_file(file), m, ambient_dim, file.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.detail());
  }
}

}  // namespace loopbu
