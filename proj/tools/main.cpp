// pacbo: command-line front end for the online clustering library.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "pacbo/commands.hpp"

namespace {

using namespace pacbo;
using namespace pacbo::cli;

void add_data_options(CLI::App* sub, DataSource& data) {
  sub->add_option("--data", data.csv_path, "Stream CSV (t,x1..xd,k_true)");
  sub->add_option("--spec", data.spec,
                  "Synthetic spec: JSON file or the name paper_10_groups");
  sub->add_option("--data-seed", data.data_seed, "Seed for the synthetic stream");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Bayesian online clustering with a varying number of clusters"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the online algorithm on one stream");
  run_cmd->add_option("--config", run.config_path, "Config JSON")->required();
  add_data_options(run_cmd, run.data);
  run_cmd->add_option("--out", run.out_dir, "Output directory")->required();
  run_cmd->add_option("--seed", run.seed, "Override the sampler seed");
  run_cmd->add_flag("--overwrite", run.overwrite, "Replace existing outputs");
  run_cmd->add_flag("--timing", run.timing, "Record wall-clock times per step");

  Table1Args table;
  bool full = false;
  auto* t1_cmd = app.add_subcommand("replicate-table1",
                                    "Correct-k counts and regret on the ten-group model");
  t1_cmd->add_option("--reps", table.reps, "Repetitions")->check(CLI::PositiveNumber);
  t1_cmd->add_flag("--full", full, "Use 100 repetitions");
  t1_cmd->add_option("--seed", table.seed, "Base seed");
  t1_cmd->add_option("--T", table.T, "Stream length");
  t1_cmd->add_option("--N", table.N, "Sampler iterations per round");
  t1_cmd->add_option("--threads", table.threads, "Worker threads (0 = all cores)");
  t1_cmd->add_option("--stride", table.regret_stride, "Regret checkpoint stride");
  t1_cmd->add_option("--out", table.out_dir, "Output directory")->required();
  t1_cmd->add_flag("--overwrite", table.overwrite, "Replace existing outputs");

  TraceArgs trace;
  auto* tr_cmd = app.add_subcommand("trace", "Sampler trace for one round");
  tr_cmd->add_option("--config", trace.config_path, "Config JSON")->required();
  add_data_options(tr_cmd, trace.data);
  tr_cmd->add_option("--t", trace.t, "Round: chain that uses x_1..x_t")->required();
  tr_cmd->add_option("--seed", trace.seed, "Override the sampler seed");
  tr_cmd->add_option("--out", trace.out_dir, "Output directory")->required();
  tr_cmd->add_flag("--overwrite", trace.overwrite, "Replace existing outputs");

  BoundsArgs bounds;
  bool bounds_json = false;
  double max_obs_norm = 0.0;
  auto* b_cmd = app.add_subcommand("bounds", "Evaluate regret bounds");
  b_cmd->add_option("--which", bounds.which, "corollary1 corollary2 corollary3 student");
  b_cmd->add_option("--k", bounds.k);
  b_cmd->add_option("--T", bounds.T);
  b_cmd->add_option("--d", bounds.d);
  b_cmd->add_option("--R", bounds.R);
  b_cmd->add_option("--eta", bounds.eta);
  b_cmd->add_option("--p", bounds.p);
  b_cmd->add_option("--lambda", bounds.lambda, "Fixed lambda for corollary1");
  b_cmd->add_option("--tau0", bounds.tau0, "Student prior scale");
  b_cmd->add_option("--center-norm-sum", bounds.center_norm_sum,
                    "Sum of comparison center norms (student)");
  auto* mon = b_cmd->add_option("--max-obs-norm", max_obs_norm, "Largest |x_t| (student)");
  b_cmd->add_flag("--adaptive", bounds.adaptive, "Student bound with lambda_t = 1/sqrt(t)");
  b_cmd->add_flag("--json", bounds_json, "JSON output");

  GenerateArgs gen;
  auto* g_cmd = app.add_subcommand("generate", "Write a synthetic stream as CSV");
  g_cmd->add_option("--spec", gen.data.spec, "Synthetic spec")->required();
  g_cmd->add_option("--data-seed", gen.data.data_seed, "Seed");
  g_cmd->add_option("--out", gen.out_dir, "Output directory")->required();
  g_cmd->add_flag("--overwrite", gen.overwrite, "Replace existing outputs");

  std::string toy_path;
  bool prior_only = false;
  std::size_t prior_p = 2;
  double threshold = 0.05;
  auto* o_cmd = app.add_subcommand("oracle-check",
                                   "Compare the sampler's k-marginal with a grid oracle");
  o_cmd->add_option("--toy", toy_path, "Toy spec JSON (defaults to the built-in instance)");
  o_cmd->add_flag("--prior-only", prior_only, "lambda = 0, eta = 0, 10^5 iterations");
  o_cmd->add_option("--p", prior_p, "p for --prior-only");
  o_cmd->add_option("--threshold", threshold, "TV pass threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::cout << std::setprecision(std::numeric_limits<double>::max_digits10);
  try {
    if (*run_cmd) {
      const RunRecord rec = cmd_run(run);
      std::cout << "wrote " << rec.steps.size() << " steps to " << run.out_dir.string() << '\n';
    } else if (*t1_cmd) {
      if (full) table.reps = 100;
      const Table1Result res = cmd_replicate_table1(table);
      std::cout << "reps " << res.correct.size() << " mean " << res.mean;
      if (res.sd) std::cout << " sd " << *res.sd;
      std::cout << '\n';
    } else if (*tr_cmd) {
      const ChainTrace tr = cmd_trace(trace);
      std::cout << "wrote " << tr.size() << " iterations\n";
    } else if (*b_cmd) {
      if (mon->count() > 0) bounds.max_obs_norm = max_obs_norm;
      const auto entries = cmd_bounds(bounds);
      if (bounds_json)
        std::cout << bounds_to_json(entries).dump(2) << '\n';
      else
        std::cout << bounds_to_text(entries);
    } else if (*g_cmd) {
      const GeneratedStream s = cmd_generate(gen);
      std::cout << "wrote " << s.data.size() << " points\n";
    } else if (*o_cmd) {
      ToySpec toy;
      if (prior_only) {
        toy = prior_only_toy(prior_p);
      } else if (!toy_path.empty()) {
        std::ifstream in(toy_path);
        if (!in) throw UsageError("cannot open " + toy_path);
        toy = toy_spec_from_json(nlohmann::json::parse(in));
      }
      const OracleReport rep = cmd_oracle_check(toy, threshold);
      std::cout << "k  chain  oracle\n";
      for (std::size_t k = 0; k < rep.oracle_marginal.size(); ++k)
        std::cout << k + 1 << "  " << rep.chain_marginal[k] << "  " << rep.oracle_marginal[k]
                  << '\n';
      std::cout << "tv " << rep.tv << (rep.pass ? " PASS" : " FAIL") << '\n';
      return rep.pass ? 0 : 2;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
