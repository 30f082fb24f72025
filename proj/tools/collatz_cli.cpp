// collatz: command-line harness over the collatz_stat library.
//
// Results go to standard output (or --out FILE); logs and the run manifest go
// to standard error (or --manifest FILE). Exit codes: 0 ok, 2 parse or input
// error, 3 verification failure, 4 budget exceeded.

#include "collatz/core_map.hpp"
#include "collatz/ensemble.hpp"
#include "collatz/montecarlo.hpp"
#include "collatz/serialize.hpp"
#include "collatz/structure.hpp"
#include "collatz/walk.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace collatz;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitVerify = 3;
constexpr int kExitBudget = 4;

struct Common {
  std::string out;
  std::string manifest;
  unsigned workers = 0;
};

struct Result {
  std::string body;
  Json config;
  std::optional<std::uint64_t> seed;
  int exit_code = 0;
};

std::vector<unsigned long> parse_ks(const std::string& text) {
  std::vector<unsigned long> ks;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("symbols must be a comma-separated list of positive integers: " + text);
    }
    ks.push_back(std::stoul(item));
  }
  return ks;
}

SymbolSequence parse_sequence(const std::string& ks, const std::string& eps) {
  return SymbolSequence(parse_ks(ks), parse_sign(eps));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void log(const std::string& line) { std::cerr << "collatz: " << line << '\n'; }

int run(const Common& common, const std::vector<std::string>& argv, const std::function<Result()>& body) {
  RunManifest manifest;
  manifest.command_line = argv;
  manifest.started_at = utc_timestamp();
  Result result;
  try {
    result = body();
  } catch (const BudgetExceeded& e) {
    log(std::string("budget exceeded: ") + e.what());
    return kExitBudget;
  } catch (const VerificationFailure& e) {
    log(std::string("verification failure: ") + e.what());
    return kExitVerify;
  } catch (const std::invalid_argument& e) {
    log(std::string("invalid input: ") + e.what());
    return kExitParse;
  } catch (const std::domain_error& e) {
    log(std::string("invalid input: ") + e.what());
    return kExitParse;
  }

  OutputDigest digest{common.out.empty() ? "stdout" : common.out, sha256_hex(result.body), result.body.size()};
  if (common.out.empty()) {
    std::cout << result.body << std::flush;
  } else {
    std::ofstream file(common.out, std::ios::binary);
    file << result.body;
    if (!file) {
      log("cannot write " + common.out);
      return kExitParse;
    }
  }
  manifest.outputs.push_back(digest);
  manifest.config = result.config;
  if (result.seed) {
    manifest.has_seed = true;
    manifest.seed = *result.seed;
  }
  manifest.finished_at = utc_timestamp();
  const std::string text = to_json(manifest).dump() + "\n";
  if (common.manifest.empty()) {
    std::cerr << text;
  } else {
    std::ofstream file(common.manifest, std::ios::binary);
    file << text;
    if (!file) {
      log("cannot write " + common.manifest);
      return kExitParse;
    }
  }
  return result.exit_code;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--out", common.out, "Write the result to FILE instead of standard output");
  sub->add_option("--manifest", common.manifest, "Write the run manifest to FILE instead of standard error");
  sub->add_option("--workers", common.workers, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact structure and sampling experiments for the accelerated 3x+1 map"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version_string()));
  std::vector<std::string> args(argv, argv + argc);
  Common common;
  std::function<Result()> action;

  {
    auto* sub = app.add_subcommand("orbit", "Print the first m steps of the orbit of x as CSV (j,x_j,k_j,z_j)");
    static std::string x;
    static std::size_t m = 0;
    sub->add_option("x", x, "Starting point (decimal, coprime to 6)")->required();
    sub->add_option("m", m, "Number of steps")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [] {
        auto x0 = PiElement::try_make(parse_decimal(x));
        if (!x0) throw std::invalid_argument(x + " is not a positive integer coprime to 6");
        const auto rec = orbit(*x0, m);
        if (rec.fixed_point_at) log("orbit reaches the fixed point 1 at step " + std::to_string(*rec.fixed_point_at + 1));
        return Result{orbit_csv(rec), {{"x", x}, {"m", m}}, std::nullopt};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("structure", "Build the progression pair of a symbol sequence as JSON");
    static std::string ks, eps;
    static std::uint64_t verify = 0, oracle = 0;
    sub->add_option("ks", ks, "Symbols k_1,...,k_m")->required();
    sub->add_option("eps", eps, "Residue sign of x_0 mod 6 (+1 or -1)")->required();
    auto* v = sub->add_option("--verify", verify, "Check the same-p property for p = 0..P_MAX");
    auto* o = sub->add_option("--oracle", oracle, "Cross-check against a brute-force scan over P members")
                  ->expected(0, 1)
                  ->default_str("50");
    add_common(sub, common);
    sub->callback([&, v, o] {
      const bool do_verify = v->count() > 0;
      const bool do_oracle = o->count() > 0;
      if (do_oracle && oracle == 0) oracle = 50;
      action = [do_verify, do_oracle] {
        const auto seq = parse_sequence(ks, eps);
        const auto pair = build(seq);
        Json out = to_json(pair);
        int code = 0;
        Json config{{"ks", ks}, {"eps", eps}};
        if (do_verify) {
          const auto res = verify_same_p(pair, verify);
          out["verified"] = res.holds;
          config["verify"] = verify;
          if (!res.holds) {
            out["counterexample_p"] = *res.counterexample;
            log("same-p check failed at p = " + std::to_string(*res.counterexample));
            code = kExitVerify;
          }
        }
        if (do_oracle) {
          const bool match = brute_force_progression(seq, oracle) == pair;
          out["oracle_match"] = match;
          config["oracle"] = oracle;
          if (!match) {
            log("brute-force oracle disagrees");
            code = kExitVerify;
          }
        }
        return Result{dump(out), config, std::nullopt, code};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("walk", "Trace the (r, delta) walk and the theta decomposition of a sequence");
    static std::string ks, eps;
    sub->add_option("ks", ks, "Symbols k_1,...,k_m")->required();
    sub->add_option("eps", eps, "Residue sign of x_0 mod 6 (+1 or -1)")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [] {
        const auto seq = parse_sequence(ks, eps);
        Json out = to_json(walk_path(seq));
        const auto t = theta_decompose(seq);
        out["rho"] = rational_json(t.rho);
        out["kappa"] = rational_json(t.kappa);
        out["theta"] = rational_json(t.theta);
        return Result{dump(out), {{"ks", ks}, {"eps", eps}}, std::nullopt};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("ensemble", "Push the symbol measure forward onto (r, delta) classes");
    static std::size_t m = 0;
    static unsigned long k_cap = 0;
    static std::string format = "csv";
    sub->add_option("m", m, "Word length")->required();
    sub->add_option("k_cap", k_cap, "Largest symbol enumerated")->required();
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_common(sub, common);
    sub->callback([&] {
      action = [&] {
        const auto table = enumerate_ensemble(m, k_cap, common.workers);
        log("tail mass " + std::to_string(table.tail_mass.get_d()));
        return Result{format == "csv" ? ensemble_csv(table) : dump(to_json(table)), {{"m", m}, {"k_cap", k_cap}},
                      std::nullopt};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("entropy", "Entropy of the class distribution against its lower bound");
    static std::size_t m = 0;
    static unsigned long k_cap = 0;
    static double gamma0 = 1;
    sub->add_option("m", m, "Word length")->required();
    sub->add_option("k_cap", k_cap, "Largest symbol enumerated")->required();
    sub->add_option("gamma0", gamma0, "Exponent in the lower bound")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [&] {
        const auto rep = entropy(enumerate_ensemble(m, k_cap, common.workers), gamma0);
        return Result{dump(to_json(rep)), {{"m", m}, {"k_cap", k_cap}, {"gamma0", gamma0}}, std::nullopt};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("clt", "Normalized symbol sums (K_m - 2m)/sqrt(2m) against N(0,1)");
    static SampleConfig c;
    sub->add_option("m", c.m, "Word length")->required();
    sub->add_option("n", c.n, "Samples")->required();
    sub->add_option("seed", c.seed, "Seed")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [&] {
        c.workers = common.workers;
        const auto rep = clt_sample(c);
        return Result{dump(to_json(rep)), {{"m", c.m}, {"n", c.n}}, c.seed};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("drift", "Mean of ln(x_m / x_0) / m over random starting points");
    static SampleConfig c;
    sub->add_option("m", c.m, "Steps")->required();
    sub->add_option("n", c.n, "Samples")->required();
    sub->add_option("x_bits", c.x_bits, "Bit length of the starting points")->required();
    sub->add_option("seed", c.seed, "Seed")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [&] {
        c.workers = common.workers;
        const auto rep = trajectory_drift(c);
        if (rep.fixed_point_hits) log(std::to_string(rep.fixed_point_hits) + " orbits reached 1");
        return Result{dump(to_json(rep)), {{"m", c.m}, {"n", c.n}, {"x_bits", c.x_bits}}, c.seed};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("theta", "Frequency of |theta_m| > m^gamma0 under the symbol measure");
    static std::uint64_t m = 0, n = 0, seed = 0;
    static double gamma0 = 1;
    sub->add_option("m", m, "Word length")->required();
    sub->add_option("n", n, "Samples")->required();
    sub->add_option("gamma0", gamma0, "Exponent of the threshold")->required();
    sub->add_option("seed", seed, "Seed")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [&] {
        const auto rep = theta_concentration(m, n, gamma0, seed, common.workers);
        return Result{dump(to_json(rep)), {{"m", m}, {"n", n}, {"gamma0", gamma0}}, seed};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("density", "Fraction of x <= N lying in the progression of a sequence");
    static std::string ks, eps, N;
    sub->add_option("ks", ks, "Symbols k_1,...,k_m")->required();
    sub->add_option("eps", eps, "Residue sign of x_0 mod 6 (+1 or -1)")->required();
    sub->add_option("N", N, "Upper limit (decimal)")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [] {
        const auto seq = parse_sequence(ks, eps);
        const auto pair = build(seq);
        const Rational d = empirical_density(pair.sigma, parse_decimal(N));
        const Rational expected = sequence_probability(seq);
        Json out{{"schema", kSchemaVersion},
                 {"version", version_string()},
                 {"ks", seq.ks()},
                 {"eps", to_int(seq.eps())},
                 {"N", N},
                 {"density", d.get_d()},
                 {"density_exact", rational_json(d)},
                 {"expected", expected.get_d()},
                 {"abs_error", std::abs(Rational(d - expected).get_d())}};
        return Result{dump(out), {{"ks", ks}, {"eps", eps}, {"N", N}}, std::nullopt};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("wiener", "Covariances of the rescaled symbol walk at fixed times");
    static std::uint64_t M = 0, n = 0, seed = 0;
    static std::vector<double> times{0.25, 0.5, 0.75, 1.0};
    sub->add_option("M", M, "Scale")->required();
    sub->add_option("n", n, "Samples")->required();
    sub->add_option("seed", seed, "Seed")->required();
    sub->add_option("--times", times, "Times in (0, 1]")->delimiter(',');
    add_common(sub, common);
    sub->callback([&] {
      action = [&] {
        const auto rep = wiener_fdd(M, times, n, seed, common.workers);
        return Result{dump(to_json(rep)), {{"M", M}, {"n", n}, {"times", times}}, seed};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("buckets", "Largest class mass within one theta bucket over words with K = k");
    static std::size_t m = 0;
    static unsigned long k = 0;
    static long width_inv = 10;
    sub->add_option("m", m, "Word length")->required();
    sub->add_option("k", k, "Symbol total")->required();
    sub->add_option("--width-inv", width_inv, "Buckets per unit of theta");
    add_common(sub, common);
    sub->callback([&] {
      action = [] {
        const auto rep = bucket_mass_bound_check(m, k, width_inv);
        return Result{dump(to_json(rep)), {{"m", m}, {"k", k}, {"width_inv", width_inv}}, std::nullopt};
      };
    });
  }

  {
    auto* sub = app.add_subcommand("preimage", "Words per (r, delta) class against (4/3)^m");
    static std::size_t m = 0;
    static unsigned long k_cap = 0;
    sub->add_option("m", m, "Word length")->required();
    sub->add_option("k_cap", k_cap, "Largest symbol enumerated")->required();
    add_common(sub, common);
    sub->callback([&] {
      action = [&] {
        const auto rep = preimage_scaling_report(enumerate_ensemble(m, k_cap, common.workers));
        return Result{dump(to_json(rep)), {{"m", m}, {"k_cap", k_cap}}, std::nullopt};
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }
  return run(common, args, action);
}
