#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "icosa/flex.hpp"
#include "icosa/invariants.hpp"
#include "icosa/solver.hpp"

namespace icosa {

struct SchemaMismatch : std::runtime_error { using std::runtime_error::runtime_error; };

using Json = nlohmann::ordered_json;

constexpr const char* kCatalogFormat = "icosa-catalog/1";
constexpr const char* kCurveFormat = "icosa-curve/1";
constexpr const char* kInvariantsFormat = "icosa-invariants/1";

// FNV-1a over raw bytes, hex-encoded; used to stamp inputs into outputs.
std::string content_hash(const std::string& bytes);
std::string file_hash(const std::string& path);

Json to_json(const SolveConfig& cfg);
SolveConfig solve_config_from_json(const Json& j);

Json to_json(const IcosaSolution& sol);
IcosaSolution solution_from_json(const Json& j, const IcoGraph& graph, const AutGroup& A);

Json catalog_to_json(const ClassCatalog& cat);
ClassCatalog catalog_from_json(const Json& j, const IcoGraph& graph, const AutGroup& A);

void write_catalog(const ClassCatalog& cat, const std::string& path);
ClassCatalog read_catalog(const std::string& path, const IcoGraph& graph, const AutGroup& A);

Json to_json(const SignificantPoint& p, const IcoGraph& graph);

// OBJ with 17 significant digits; faces 1-based.
std::string coords_to_obj(const Coord& M, const IcoGraph& graph,
                          const std::string& comment = "");
Coord coords_from_obj(const std::string& text);
void write_obj(const Coord& M, const IcoGraph& graph, const std::string& path,
               const std::string& comment = "");
Coord read_obj(const std::string& path);

std::string curve_state_line(const CurveState& st);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace icosa
