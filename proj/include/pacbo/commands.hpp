#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pacbo/config.hpp"
#include "pacbo/datagen.hpp"
#include "pacbo/metrics_bounds.hpp"
#include "pacbo/online.hpp"

// Subcommand implementations shared by the pacbo executable and the tests.
namespace pacbo::cli {

/// Bad arguments or inputs; mapped to exit code 1 by the executable.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Synthetic stream description in JSON:
///   {"kind": "paper_10_groups", "T": 200}
///   {"kind": "gaussian_mixture", "T": 100, "means": [[..]], "covariances": [[[..]]],
///    "weights": [..]}
///   {"kind": "fixed", "points": [[..]], "k_true": [..]}
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);
/// Accepts a path to a JSON file or the bare name "paper_10_groups".
SyntheticSpec load_synthetic_spec(const std::string& path_or_name);

/// Either a CSV stream or a synthetic spec drawn with data_seed.
struct DataSource {
  std::string csv_path;
  std::string spec;
  std::uint64_t data_seed = 1;
};

GeneratedStream load_stream(const DataSource& src);

/// Fails when any of the files exists and overwrite is false; creates dir.
void prepare_outputs(const std::filesystem::path& dir,
                     const std::vector<std::string>& files, bool overwrite);

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string config_path;
  DataSource data;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  bool overwrite = false;
  bool timing = false;
};

/// Writes run.jsonl and summary.csv.
RunRecord cmd_run(const RunArgs& args);

// ---------------------------------------------------------------------------

struct Table1Args {
  std::size_t reps = 20;
  std::uint64_t seed = 2017;
  std::size_t T = 200;
  std::size_t N = 500;
  std::size_t threads = 0;  // 0 = hardware concurrency
  std::size_t regret_stride = 10;
  std::filesystem::path out_dir;  // empty = no files
  bool overwrite = false;
};

struct Table1Result {
  std::vector<std::size_t> correct;  // per repetition, in repetition order
  double mean = 0.0;
  std::optional<double> sd;          // absent for a single repetition
  std::vector<RegretRow> regret;
};

/// Ten-group model repetitions with the default PACBO settings. Writes
/// table1_reps.csv, table1_summary.csv and regret.csv when out_dir is set.
Table1Result cmd_replicate_table1(const Table1Args& args);

/// Seeds for repetition r: data and sampler streams are disjoint.
std::uint64_t repetition_data_seed(std::uint64_t seed, std::size_t r);
std::uint64_t repetition_run_seed(std::uint64_t seed, std::size_t r);

// ---------------------------------------------------------------------------

struct TraceArgs {
  std::string config_path;
  DataSource data;
  std::size_t t = 1;  // chain producing c_hat_{t+1} from x_1..x_t
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir;
  bool overwrite = false;
};

/// Writes trace.csv.
ChainTrace cmd_trace(const TraceArgs& args);

/// Chain trace for round t of an in-memory run, same contract as cmd_trace.
ChainTrace trace_at(const Dataset& data, const PacboConfig& cfg, std::size_t t);

// ---------------------------------------------------------------------------

struct BoundsArgs {
  std::vector<std::string> which = {"corollary1", "corollary2", "corollary3", "student"};
  std::size_t k = 10;
  std::size_t T = 200;
  std::size_t d = 2;
  double R = 15.0;
  double eta = 0.0;
  std::size_t p = 20;
  double lambda = 1.0;           // corollary1
  double tau0 = 1.0;             // student
  double center_norm_sum = 0.0;  // student
  std::optional<double> max_obs_norm;
  bool adaptive = false;
};

struct BoundEntry {
  std::string name;
  std::optional<double> value;
  std::string error;  // set when the validity conditions fail
};

/// Evaluates each requested bound independently.
std::vector<BoundEntry> cmd_bounds(const BoundsArgs& args);

nlohmann::json bounds_to_json(const std::vector<BoundEntry>& entries);
std::vector<BoundEntry> bounds_from_json(const nlohmann::json& j);
std::string bounds_to_text(const std::vector<BoundEntry>& entries);

// ---------------------------------------------------------------------------

struct GenerateArgs {
  DataSource data;
  std::filesystem::path out_dir;
  bool overwrite = false;
};

/// Writes stream.csv.
GeneratedStream cmd_generate(const GenerateArgs& args);

// ---------------------------------------------------------------------------

/// Small quasi-posterior that the grid oracle can normalize.
struct ToySpec {
  std::size_t d = 1;
  std::size_t p = 3;
  double R = 1.0;
  double eta = 0.0;
  double lambda = 1.0;                  // 0 gives the prior
  Dataset points{1, {{-1.2}, {0.1}, {1.3}}};
  std::vector<double> output_losses = {1.0, 0.5, 0.8};
  std::vector<double> past_lambdas = {1.0, 1.0, 1.0};  // lambda_0..lambda_{t-1}
  double tau = 1.2;                     // proposal scale
  std::size_t iterations = 20000;       // kept after burn-in
  std::size_t burn_in = 2000;
  std::size_t cells_per_axis = 200;
  std::uint64_t seed = 11;
};

ToySpec toy_spec_from_json(const nlohmann::json& j);
/// Toy with lambda = 0, eta = 0 and 10^5 iterations.
ToySpec prior_only_toy(std::size_t p = 2);

struct OracleReport {
  std::vector<double> chain_marginal;
  std::vector<double> oracle_marginal;
  double tv = 0.0;
  double threshold = 0.05;
  bool pass = false;
};

/// Throws UsageError for d > 2 or p > 3.
OracleReport cmd_oracle_check(const ToySpec& toy, double threshold = 0.05);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace pacbo::cli
