#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

#include "hodgesamp/complex.hpp"
#include "hodgesamp/delaunay.hpp"
#include "hodgesamp/sampling.hpp"

namespace hodgesamp {

using Json = nlohmann::ordered_json;

/// {"num_nodes": N0, "edges": [[i,j], ...], "triangles": [[i,j,k], ...]}.
/// Incidence matrices are never serialized.
Json complex_to_json(const SimplicialComplex& c);

/// Throws Errc::malformed_file on schema errors; structural violations
/// surface with the codes build_complex uses.
SimplicialComplex complex_from_json(const nlohmann::json& j);

void save_complex(const std::filesystem::path& path, const SimplicialComplex& c);
SimplicialComplex load_complex(const std::filesystem::path& path);

/// FNV-1a 64 of the compact complex JSON, as 16 hex digits.
std::string complex_hash(const SimplicialComplex& c);

/// Shortest text that parses back to the same double ("%.17g").
std::string format_double(double v);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Header "x,y", then one node per line.
void write_points_csv(const std::filesystem::path& path, std::span<const Point2> points);

/// One value per line.
void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v);
Eigen::VectorXd read_vector_csv(const std::filesystem::path& path);

/// |S| rows by P columns, comma separated; sidecar {sample_set, P, seed}.
void write_observations(const std::filesystem::path& csv_path, const Observations& obs,
                        const SamplingPlan& plan);

}  // namespace hodgesamp
