#include "collatz/serialize.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace collatz {

const char* version_string() { return COLLATZ_VERSION; }

Json rational_json(const Rational& q) {
  return {{"num", decimal(q.get_num())}, {"den", decimal(q.get_den())}};
}

Rational rational_from_json(const Json& j) {
  Rational q(parse_decimal(j.at("num").get<std::string>()), parse_decimal(j.at("den").get<std::string>()));
  q.canonicalize();
  return q;
}

namespace {

Json stamp(Json body) {
  Json out{{"schema", kSchemaVersion}, {"version", version_string()}};
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

Json config_json(const SampleConfig& c) {
  Json j{{"m", c.m}, {"n", c.n}, {"seed", c.seed}};
  if (c.x_bits) j["x_bits"] = c.x_bits;
  return j;
}

}  // namespace

Json to_json(const StructurePair& pair) {
  Json digits = Json::array();
  for (const auto& t : pair.digits) digits.push_back(decimal(t));
  return stamp({{"ks", pair.seq.ks()},
                {"eps", to_int(pair.seq.eps())},
                {"K", std::to_string(pair.sigma.K)},
                {"q", decimal(pair.sigma.q)},
                {"m", std::to_string(pair.lambda.m)},
                {"r", decimal(pair.lambda.r)},
                {"delta", to_int(pair.lambda.delta)},
                {"digits", digits},
                {"offset", decimal(pair.lambda.offset)},
                {"q_presented", decimal(pair.sigma.presented_q())},
                {"r_presented", decimal(pair.lambda.presented_r())}});
}

StructurePair structure_pair_from_json(const Json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schema");
  SymbolSequence seq(j.at("ks").get<std::vector<unsigned long>>(), sign_from_int(j.at("eps").get<long>()));
  const auto K = std::stoul(j.at("K").get<std::string>());
  const auto m = std::stoul(j.at("m").get<std::string>());
  std::vector<BigInt> digits;
  for (const auto& d : j.at("digits")) digits.push_back(parse_decimal(d.get<std::string>()));
  SigmaProgression sigma{K, parse_decimal(j.at("q").get<std::string>()), seq.eps()};
  const BigInt r = parse_decimal(j.at("r").get<std::string>());
  const BigInt offset = j.contains("offset") ? parse_decimal(j.at("offset").get<std::string>()) : r;
  LambdaClass lambda{m, r, offset, sign_from_int(j.at("delta").get<long>())};
  if (K != seq.total() || m != seq.m()) throw std::invalid_argument("K or m inconsistent with ks");
  return {std::move(seq), std::move(sigma), std::move(lambda), std::move(digits)};
}

Json to_json(const ThetaDecomposition& t) {
  return stamp({{"rho", rational_json(t.rho)}, {"kappa", rational_json(t.kappa)}, {"theta", rational_json(t.theta)}});
}

Json to_json(const WalkPath& path) {
  Json states = Json::array();
  for (const auto& s : path.states) states.push_back({{"r", decimal(s.r)}, {"delta", to_int(s.delta)}});
  return stamp({{"ks", path.seq.ks()}, {"eps", to_int(path.seq.eps())}, {"states", states}});
}

Json to_json(const EnsembleTable& table) {
  Json entries = Json::array();
  for (const auto& [key, e] : table.entries) {
    entries.push_back({{"r", decimal(key.r)},
                       {"delta", to_int(key.delta)},
                       {"count", e.count},
                       {"mass", rational_json(e.mass)}});
  }
  return stamp({{"m", table.m},
                {"k_cap", table.k_cap},
                {"sequences", table.sequences},
                {"tail_mass", rational_json(table.tail_mass)},
                {"entries", entries}});
}

Json to_json(const EntropyReport& rep) {
  return stamp({{"m", rep.m},
                {"H", rep.H},
                {"lower_bound", rep.lower_bound},
                {"gamma0", rep.gamma0},
                {"tail_error_bound", rep.tail_error_bound},
                {"ceiling", rep.ceiling},
                {"classes", rep.classes},
                {"deficit", rep.ceiling - rep.H}});
}

Json to_json(const BucketReport& rep) {
  return stamp({{"m", rep.m},
                {"k", rep.k},
                {"width_inv", rep.width_inv},
                {"sequences", rep.sequences},
                {"max_mass", rational_json(rep.max_mass)},
                {"worst", {{"r", decimal(rep.worst_class.r)}, {"delta", to_int(rep.worst_class.delta)}, {"i", rep.worst_bucket}}},
                {"bound", rational_json(rep.bound)},
                {"slack", rational_json(rep.slack)},
                {"ratio", rep.ratio()},
                {"within_bound", rep.within_bound()},
                {"lattice_bound", rational_json(rep.lattice_bound)},
                {"within_lattice_bound", rep.within_lattice_bound()},
                {"kappa_distinct", rep.kappa_distinct}});
}

Json to_json(const PreimageScalingReport& rep) {
  return stamp({{"m", rep.m},
                {"k_cap", rep.k_cap},
                {"heuristic", rep.heuristic},
                {"mean_all", rep.mean_all},
                {"mean_reachable", rep.mean_reachable},
                {"median_reachable", rep.median_reachable},
                {"reachable", rep.reachable},
                {"unreachable", decimal(rep.unreachable)}});
}

Json to_json(const CltReport& rep) {
  return stamp({{"seed", rep.config.seed},
                {"config", config_json(rep.config)},
                {"sample_mean", rep.sample_mean},
                {"sample_variance", rep.sample_variance},
                {"ks_distance", rep.ks_distance},
                {"sigma_used", rep.sigma_used}});
}

Json to_json(const DriftReport& rep) {
  return stamp({{"seed", rep.config.seed},
                {"config", config_json(rep.config)},
                {"mean_z_over_m", rep.mean_z_over_m},
                {"stderr", rep.stderr_z},
                {"mean_k_over_m", rep.mean_k_over_m},
                {"stderr_k", rep.stderr_k},
                {"expected", -(2 * std::log(2.0) - std::log(3.0))},
                {"fixed_point_hits", rep.fixed_point_hits}});
}

Json to_json(const WienerReport& rep) {
  return stamp({{"seed", rep.seed},
                {"config", {{"M", rep.M}, {"n", rep.n}, {"times", rep.times}}},
                {"steps", rep.steps},
                {"means", rep.means},
                {"covariance", rep.covariance},
                {"expected", rep.expected},
                {"sigma", rep.sigma},
                {"max_relative_deviation", rep.max_relative_deviation},
                {"max_increment_correlation", rep.max_increment_correlation}});
}

Json to_json(const ThetaConcentration& rep) {
  return stamp({{"seed", rep.seed},
                {"config", {{"m", rep.m}, {"n", rep.n}, {"gamma0", rep.gamma0}}},
                {"threshold", rep.threshold},
                {"exceedances", rep.exceedances},
                {"estimate", rep.estimate},
                {"upper95", rep.upper95}});
}

std::string ensemble_csv(const EnsembleTable& table) {
  std::ostringstream out;
  out << "r,delta,count,mass_num,mass_den\n";
  for (const auto& [key, e] : table.entries) {
    out << decimal(key.r) << ',' << to_int(key.delta) << ',' << e.count << ',' << decimal(e.mass.get_num()) << ','
        << decimal(e.mass.get_den()) << '\n';
  }
  return out.str();
}

std::string orbit_csv(const OrbitRecord& record) {
  std::ostringstream out;
  out << "j,x_j,k_j,z_j\n";
  const double y0 = log_big(record.origin.value());
  char buf[64];
  for (std::size_t j = 0; j < record.steps.size(); ++j) {
    const auto& s = record.steps[j];
    std::snprintf(buf, sizeof buf, "%.17g", log_big(s.x.value()) - y0);
    out << (j + 1) << ',' << decimal(s.x.value()) << ',' << s.k << ',' << buf << '\n';
  }
  return out.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json to_json(const RunManifest& manifest) {
  Json outputs = Json::array();
  for (const auto& o : manifest.outputs) outputs.push_back({{"name", o.name}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  Json j{{"schema", kSchemaVersion},
         {"version", version_string()},
         {"command_line", manifest.command_line},
         {"config", manifest.config},
         {"started_at", manifest.started_at},
         {"finished_at", manifest.finished_at},
         {"outputs", outputs}};
  if (manifest.has_seed) j["seed"] = manifest.seed;
  return j;
}

}  // namespace collatz
