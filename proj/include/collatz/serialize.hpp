#pragma once

// Machine-readable forms of every result: JSON (schema 1, big integers as
// decimal strings) and CSV with a header row.

#include "collatz/core_map.hpp"
#include "collatz/ensemble.hpp"
#include "collatz/montecarlo.hpp"
#include "collatz/structure.hpp"
#include "collatz/walk.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace collatz {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

const char* version_string();

Json rational_json(const Rational& q);  // {"num": "...", "den": "..."}
Rational rational_from_json(const Json& j);

/// {ks, eps, K, q, m, r, delta, digits} plus offset and the presented
/// representatives q_presented, r_presented.
Json to_json(const StructurePair& pair);
StructurePair structure_pair_from_json(const Json& j);

Json to_json(const ThetaDecomposition& t);
Json to_json(const WalkPath& path);
Json to_json(const EnsembleTable& table);
Json to_json(const EntropyReport& rep);
Json to_json(const BucketReport& rep);
Json to_json(const PreimageScalingReport& rep);
Json to_json(const CltReport& rep);
Json to_json(const DriftReport& rep);
Json to_json(const WienerReport& rep);
Json to_json(const ThetaConcentration& rep);

/// Columns: r,delta,count,mass_num,mass_den.
std::string ensemble_csv(const EnsembleTable& table);
/// Columns: j,x_j,k_j,z_j (z_j = ln x_j - ln x_0).
std::string orbit_csv(const OrbitRecord& record);

std::string sha256_hex(const std::string& bytes);

struct OutputDigest {
  std::string name;  // file path, or "stdout"
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunManifest {
  std::vector<std::string> command_line;
  std::uint64_t seed = 0;
  bool has_seed = false;
  Json config;
  std::string started_at;  // ISO-8601 UTC
  std::string finished_at;
  std::vector<OutputDigest> outputs;
};

std::string utc_timestamp();
Json to_json(const RunManifest& manifest);

}  // namespace collatz
