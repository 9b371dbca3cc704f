#include "hodgesamp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hodgesamp/error.hpp"

namespace hodgesamp {

namespace fs = std::filesystem;

Json complex_to_json(const SimplicialComplex& c) {
  Json j;
  j["num_nodes"] = c.num_nodes();
  Json edges = Json::array();
  for (const auto& e : c.edges()) edges.push_back({e[0], e[1]});
  Json tris = Json::array();
  for (const auto& t : c.triangles()) tris.push_back({t[0], t[1], t[2]});
  j["edges"] = std::move(edges);
  j["triangles"] = std::move(tris);
  return j;
}

SimplicialComplex complex_from_json(const nlohmann::json& j) {
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  Index num_nodes = 0;
  try {
    if (!j.is_object()) throw Error(Errc::malformed_file, "complex document must be an object");
    num_nodes = j.at("num_nodes").get<Index>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::malformed_file, "edge must be [i, j]");
      edges.push_back({e[0].get<Index>(), e[1].get<Index>()});
    }
    for (const auto& t : j.at("triangles")) {
      if (!t.is_array() || t.size() != 3) throw Error(Errc::malformed_file, "triangle must be [i, j, k]");
      triangles.push_back({t[0].get<Index>(), t[1].get<Index>(), t[2].get<Index>()});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::malformed_file, ex.what());
  }
  return build_complex(num_nodes, std::move(edges), std::move(triangles));
}

void save_complex(const fs::path& path, const SimplicialComplex& c) {
  write_json(path, complex_to_json(c));
}

SimplicialComplex load_complex(const fs::path& path) { return complex_from_json(read_json(path)); }

std::string complex_hash(const SimplicialComplex& c) {
  const std::string text = complex_to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_argument, "cannot open " + path.string() + " for writing");
  out << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_file, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::malformed_file, path.string() + ": " + ex.what());
  }
}

void write_points_csv(const fs::path& path, std::span<const Point2> points) {
  std::ostringstream os;
  os << "x,y\n";
  for (const auto& p : points) os << format_double(p.x) << ',' << format_double(p.y) << '\n';
  write_text(path, os.str());
}

void write_vector_csv(const fs::path& path, const Eigen::VectorXd& v) {
  std::ostringstream os;
  for (Index i = 0; i < v.size(); ++i) os << format_double(v(i)) << '\n';
  write_text(path, os.str());
}

Eigen::VectorXd read_vector_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_file, "cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      values.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw Error(Errc::malformed_file, path.string() + ": bad value '" + line + "'");
    }
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
}

void write_observations(const fs::path& csv_path, const Observations& obs, const SamplingPlan& plan) {
  std::ostringstream os;
  for (Index i = 0; i < obs.z1_matrix.rows(); ++i) {
    for (Index p = 0; p < obs.z1_matrix.cols(); ++p) {
      if (p > 0) os << ',';
      os << format_double(obs.z1_matrix(i, p));
    }
    os << '\n';
  }
  write_text(csv_path, os.str());

  Json side;
  side["sample_set"] = plan.sample_set;
  side["P"] = plan.num_shifts;
  side["seed"] = plan.seed;
  fs::path sidecar = csv_path;
  sidecar.replace_extension(".json");
  write_json(sidecar, side);
}

}  // namespace hodgesamp
