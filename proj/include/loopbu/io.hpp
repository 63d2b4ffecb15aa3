#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loopbu/coincidence.hpp"

namespace loopbu {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, std::string_view text);

// Parses JSON text; syntax errors become InvalidInput with line and column.
json parse_json(std::string_view text);

// {"manifold": "sphere"|"euclidean", "n": int, "m": int, "base": [..],
//  "samples": [[..], ...]}
json loop_to_json(const Loop& loop);
Loop loop_from_json(const json& doc);
std::string dump_loop(const Loop& loop);
Loop load_loop(const std::filesystem::path& file);

// {"n": int, "m": int, "samples": [[..], ...]}; n is the point dimension.
json path_to_json(const SampledPath& path);
SampledPath path_from_json(const json& doc);
SampledPath load_path(const std::filesystem::path& file);

// {"betas": [path, ...]}
std::vector<SampledPath> load_betas(const std::filesystem::path& file);

// {"x": [..], "residual": r, "tf_distance": d, "method": "...",
//  "iterations": i, "loop": <loop>}
json certificate_to_json(const CoincidenceCertificate& cert);
CoincidenceCertificate certificate_from_json(const json& doc);

// {"certificates": [...], "summary": {"fibers", "certified", "max_residual"}}
json family_report_to_json(const FamilyReport& report);

// Functional spec in TOML:
//   [[component]]  kind = "sqdist" with one of
//                    file = "beta.json" (relative to the spec file)
//                    samples = [[..], ...]
//                    poly = [[c0..], [c1..], ...]      beta(t) = sum c_p t^p
//                    random = { seed = 1, modes = 3, amplitude = 1.0 }
//   [[component]]  kind = "wcoord", axis = 0-based index, with one of
//                    weights = [w_0, ..., w_m]
//                    weight_poly = [c0, c1, ...]       w(t) = sum c_p t^p
// m and the ambient dimension come from the caller.
FunctionalSpec parse_functional_spec(std::string_view toml_text, int m, Eigen::Index ambient_dim,
                                     const std::filesystem::path& base_dir = {});
FunctionalSpec load_functional_spec(const std::filesystem::path& file, int m,
                                    Eigen::Index ambient_dim);

Vec vec_from_json(const json& value, std::string_view field);
json vec_to_json(const Vec& v);

}  // namespace loopbu
