#include "pacbo/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "pacbo/io.hpp"
#include "pacbo/kmeans.hpp"
#include "pacbo/priors.hpp"
#include "pacbo/proposals.hpp"
#include "pacbo/quasi_posterior.hpp"
#include "pacbo/rjmcmc.hpp"

namespace pacbo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

std::vector<double> vector_of(const json& j, const char* what) {
  if (!j.is_array()) throw UsageError(std::string(what) + ": expected an array");
  return j.get<std::vector<double>>();
}

PointSet points_of(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw UsageError(std::string(what) + ": expected a non-empty array");
  const std::size_t d = j.front().size();
  if (d == 0) throw UsageError(std::string(what) + ": empty point");
  PointSet out(d);
  for (const auto& row : j) {
    const auto v = vector_of(row, what);
    if (v.size() != d) throw UsageError(std::string(what) + ": ragged rows");
    out.push_back(v);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

PacboConfig read_config(const std::string& path) {
  if (path.empty()) throw UsageError("a config file is required (--config)");
  if (!fs::exists(path)) throw UsageError("config file not found: " + path);
  try {
    return load_config(path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

// Writes through a temporary file so a failed command leaves no partial output.
template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << std::setprecision(kDigits);
    writer(out);
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void check_stream_dim(const GeneratedStream& s, const PacboConfig& cfg) {
  if (s.data.empty()) throw UsageError("the data stream is empty");
  if (s.data.dim() != cfg.d)
    throw UsageError("data dimension " + std::to_string(s.data.dim()) +
                     " does not match config d = " + std::to_string(cfg.d));
}

}  // namespace

SyntheticSpec synthetic_spec_from_json(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "paper_10_groups") {
    PaperTenGroups s;
    s.T = j.value("T", s.T);
    return s;
  }
  if (kind == "gaussian_mixture") {
    GaussianMixture s;
    s.T = j.value("T", s.T);
    for (const auto& m : j.at("means")) s.means.push_back(vector_of(m, "means"));
    for (const auto& c : j.at("covariances")) {
      std::vector<double> flat;
      for (const auto& row : c) {
        const auto r = vector_of(row, "covariances");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      s.covariances.push_back(std::move(flat));
    }
    s.weights = vector_of(j.at("weights"), "weights");
    return s;
  }
  if (kind == "fixed") {
    FixedPoints s;
    s.points = Dataset(points_of(j.at("points"), "points"));
    if (j.contains("k_true")) s.k_true = j.at("k_true").get<std::vector<std::size_t>>();
    return s;
  }
  throw UsageError("unknown synthetic spec kind '" + kind + "'");
}

SyntheticSpec load_synthetic_spec(const std::string& path_or_name) {
  if (path_or_name == "paper_10_groups") return PaperTenGroups{};
  return synthetic_spec_from_json(read_json_file(path_or_name));
}

GeneratedStream load_stream(const DataSource& src) {
  if (!src.csv_path.empty() && !src.spec.empty())
    throw UsageError("give either --data or --spec, not both");
  if (!src.csv_path.empty()) {
    std::ifstream in(src.csv_path);
    if (!in) throw UsageError("cannot open " + src.csv_path);
    try {
      return read_stream_csv(in);
    } catch (const std::exception& e) {
      throw UsageError(src.csv_path + ": " + e.what());
    }
  }
  if (src.spec.empty()) throw UsageError("a data source is required (--data or --spec)");
  const SyntheticSpec spec = load_synthetic_spec(src.spec);
  Rng rng = seeded_rng(src.data_seed, 0);
  try {
    return generate(spec, rng);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("spec: ") + e.what());
  }
}

void prepare_outputs(const fs::path& dir, const std::vector<std::string>& files,
                     bool overwrite) {
  if (dir.empty()) throw UsageError("an output directory is required (--out)");
  if (!overwrite)
    for (const auto& f : files)
      if (fs::exists(dir / f))
        throw UsageError((dir / f).string() + " exists; pass --overwrite to replace it");
  fs::create_directories(dir);
}

// ---------------------------------------------------------------------------

RunRecord cmd_run(const RunArgs& args) {
  PacboConfig cfg = read_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  const GeneratedStream stream = load_stream(args.data);
  check_stream_dim(stream, cfg);
  prepare_outputs(args.out_dir, {"run.jsonl", "summary.csv"}, args.overwrite);

  RunRecord record = run_stream(stream.data, cfg);
  write_file(args.out_dir / "run.jsonl",
             [&](std::ostream& o) { write_run_jsonl(o, record, args.timing); });
  write_file(args.out_dir / "summary.csv",
             [&](std::ostream& o) { write_run_summary_csv(o, record); });
  return record;
}

// ---------------------------------------------------------------------------

std::uint64_t repetition_data_seed(std::uint64_t seed, std::size_t r) {
  return seed * 1'000'003ULL + 2 * r;
}

std::uint64_t repetition_run_seed(std::uint64_t seed, std::size_t r) {
  return seed * 1'000'003ULL + 2 * r + 1;
}

Table1Result cmd_replicate_table1(const Table1Args& args) {
  if (args.reps == 0) throw UsageError("reps must be at least 1");
  if (args.T == 0) throw UsageError("T must be at least 1");
  const std::vector<std::string> files = {"table1_reps.csv", "table1_summary.csv",
                                          "regret.csv"};
  if (!args.out_dir.empty()) prepare_outputs(args.out_dir, files, args.overwrite);

  PacboConfig base;
  base.d = 2;
  base.p = 20;
  base.R = 15.0;
  base.N = args.N;
  base.lambda.kind = LambdaKind::PacboDefault;

  std::vector<Repetition> reps(args.reps);
  std::size_t workers = args.threads ? args.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, args.reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t r = next++; r < args.reps; r = next++) {
      try {
        Rng data_rng = seeded_rng(repetition_data_seed(args.seed, r), 0);
        GeneratedStream s = generate(PaperTenGroups{args.T}, data_rng);
        PacboConfig cfg = base;
        cfg.seed = repetition_run_seed(args.seed, r);
        reps[r].run = run_stream(s.data, cfg);
        reps[r].data = std::move(s.data);
        reps[r].k_true = std::move(s.k_true);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  Table1Result res;
  for (const auto& rep : reps) res.correct.push_back(correct_k_count(rep.run, rep.k_true));
  const double n = static_cast<double>(res.correct.size());
  for (auto c : res.correct) res.mean += static_cast<double>(c) / n;
  if (res.correct.size() > 1) {
    double ss = 0.0;
    for (auto c : res.correct) ss += (static_cast<double>(c) - res.mean) * (static_cast<double>(c) - res.mean);
    res.sd = std::sqrt(ss / (n - 1.0));
  }

  RegretOptions ropts;
  ropts.stride = args.regret_stride;
  ropts.extra_times = {50, 100, 200};
  ropts.p = base.p;
  res.regret = regret_report(reps, base.R, ropts);

  if (!args.out_dir.empty()) {
    write_file(args.out_dir / "table1_reps.csv", [&](std::ostream& o) {
      o << "rep,correct_k\n";
      for (std::size_t r = 0; r < res.correct.size(); ++r) o << r << ',' << res.correct[r] << '\n';
    });
    write_file(args.out_dir / "table1_summary.csv", [&](std::ostream& o) {
      o << "reps,T,mean,sd\n";
      o << args.reps << ',' << args.T << ',' << res.mean << ',';
      if (res.sd) o << *res.sd;
      o << '\n';
    });
    write_file(args.out_dir / "regret.csv",
               [&](std::ostream& o) { write_regret_csv(o, res.regret); });
  }
  return res;
}

// ---------------------------------------------------------------------------

ChainTrace trace_at(const Dataset& data, const PacboConfig& cfg_in, std::size_t t) {
  if (t == 0 || t > data.size())
    throw UsageError("t = " + std::to_string(t) + " is outside the stream (1.." +
                     std::to_string(data.size()) + ")");
  PacboConfig cfg = cfg_in;
  cfg.R = resolve_radius(cfg_in, data);
  cfg.R_auto = false;
  cfg.record_traces = true;
  // Rounds are seeded independently, so the prefix run reproduces round t.
  RunRecord rec = run_stream(Dataset(data.prefix(t)), cfg);
  return std::move(rec.next.trace);
}

ChainTrace cmd_trace(const TraceArgs& args) {
  PacboConfig cfg = read_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  const GeneratedStream stream = load_stream(args.data);
  check_stream_dim(stream, cfg);
  if (args.t == 0 || args.t > stream.data.size())
    throw UsageError("t = " + std::to_string(args.t) + " is outside the stream (1.." +
                     std::to_string(stream.data.size()) + ")");
  prepare_outputs(args.out_dir, {"trace.csv"}, args.overwrite);
  ChainTrace trace = trace_at(stream.data, cfg, args.t);
  write_file(args.out_dir / "trace.csv",
             [&](std::ostream& o) { write_trace_csv(o, args.t, trace); });
  return trace;
}

// ---------------------------------------------------------------------------

std::vector<BoundEntry> cmd_bounds(const BoundsArgs& a) {
  std::vector<BoundEntry> out;
  for (const auto& name : a.which) {
    BoundEntry e;
    e.name = name;
    try {
      if (name == "corollary1") {
        e.value = bound_corollary1(a.k, a.T, a.d, a.R, a.lambda, a.eta, a.p);
      } else if (name == "corollary2") {
        e.value = bound_corollary2(a.k, a.T, a.d, a.R, a.eta, a.p);
      } else if (name == "corollary3") {
        e.value = bound_corollary3(a.k, a.T, a.d, a.R, a.eta, a.p);
      } else if (name == "student") {
        StudentBoundParams b;
        b.k = a.k;
        b.T = a.T;
        b.d = a.d;
        b.R = a.R;
        b.tau0 = a.tau0;
        b.eta = a.eta;
        b.p = a.p;
        b.center_norm_sum = a.center_norm_sum;
        b.max_obs_norm = a.max_obs_norm;
        b.adaptive = a.adaptive;
        e.value = bound_student(b);
      } else {
        e.error = "unknown bound";
      }
    } catch (const std::exception& ex) {
      e.value.reset();
      e.error = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

json bounds_to_json(const std::vector<BoundEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) {
    json j{{"name", e.name}};
    if (e.value) {
      j["value"] = *e.value;
    } else {
      j["value"] = nullptr;
      j["error"] = e.error;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<BoundEntry> bounds_from_json(const json& j) {
  std::vector<BoundEntry> out;
  for (const auto& item : j) {
    BoundEntry e;
    e.name = item.at("name").get<std::string>();
    if (!item.at("value").is_null()) e.value = item.at("value").get<double>();
    e.error = item.value("error", "");
    out.push_back(std::move(e));
  }
  return out;
}

std::string bounds_to_text(const std::vector<BoundEntry>& entries) {
  std::ostringstream os;
  os << std::setprecision(kDigits);
  for (const auto& e : entries) {
    os << e.name << ": ";
    if (e.value)
      os << *e.value;
    else
      os << "error: " << e.error;
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

GeneratedStream cmd_generate(const GenerateArgs& args) {
  const GeneratedStream stream = load_stream(args.data);
  prepare_outputs(args.out_dir, {"stream.csv"}, args.overwrite);
  write_file(args.out_dir / "stream.csv", [&](std::ostream& o) { write_stream_csv(o, stream); });
  return stream;
}

// ---------------------------------------------------------------------------

ToySpec toy_spec_from_json(const json& j) {
  ToySpec s;
  s.d = j.value("d", s.d);
  s.p = j.value("p", s.p);
  s.R = j.value("R", s.R);
  s.eta = j.value("eta", s.eta);
  s.lambda = j.value("lambda", s.lambda);
  if (j.contains("points")) s.points = Dataset(points_of(j.at("points"), "points"));
  if (j.contains("output_losses")) s.output_losses = vector_of(j.at("output_losses"), "output_losses");
  if (j.contains("past_lambdas")) s.past_lambdas = vector_of(j.at("past_lambdas"), "past_lambdas");
  s.tau = j.value("tau", s.tau);
  s.iterations = j.value("iterations", s.iterations);
  s.burn_in = j.value("burn_in", s.burn_in);
  s.cells_per_axis = j.value("cells_per_axis", s.cells_per_axis);
  s.seed = j.value("seed", s.seed);
  return s;
}

ToySpec prior_only_toy(std::size_t p) {
  ToySpec s;
  s.p = p;
  s.lambda = 0.0;
  s.eta = 0.0;
  s.iterations = 100000;
  s.burn_in = 1000;
  return s;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    tv += std::abs(x - y);
  }
  return 0.5 * tv;
}

OracleReport cmd_oracle_check(const ToySpec& toy, double threshold) {
  if (toy.d == 0 || toy.d > 2) throw UsageError("oracle-check supports d <= 2 only");
  if (toy.p == 0 || toy.p > 3) throw UsageError("oracle-check supports p <= 3 only");
  if (!(toy.R > 0.0) || !std::isfinite(toy.R)) throw UsageError("oracle-check needs a finite R > 0");
  if (toy.points.dim() != toy.d) throw UsageError("toy points do not match d");
  if (toy.points.empty()) throw UsageError("toy instance needs at least one point");
  if (toy.output_losses.size() != toy.points.size())
    throw UsageError("output_losses must have one entry per point");
  if (toy.past_lambdas.size() < toy.points.size())
    throw UsageError("past_lambdas must cover lambda_0..lambda_{t-1}");
  if (toy.iterations == 0) throw UsageError("iterations must be positive");

  PriorSpec ps;
  ps.kind = PriorKind::UniformBall;
  ps.p = toy.p;
  ps.d = toy.d;
  ps.R = toy.R;
  ps.eta = toy.eta;
  const Prior prior(ps);
  ScoreContext ctx{&toy.points, toy.output_losses, toy.past_lambdas};
  ctx.check();
  const TargetDensity tgt{&prior, ctx, toy.lambda};

  GridSpec grid;
  grid.cells_per_axis = toy.cells_per_axis;
  const GridOracleResult oracle = grid_oracle(tgt, grid);

  Rng rng = seeded_rng(toy.seed, 0);
  KMeansCache fits(toy.points, toy.points.size(), KMeansOptions{}, rng.split(2));
  const ProposalKernel kernel(fits, toy.tau);
  Rng chain_rng = rng.split(1);
  ChainState state =
      make_state(project_into_support(fits.get(1).centers, prior.support_radius()), tgt);
  if (toy.burn_in > 0)
    state = run_chain(std::move(state), toy.burn_in, tgt, kernel, chain_rng, false).final_state;
  const ChainResult chain = run_chain(std::move(state), toy.iterations, tgt, kernel, chain_rng, true);

  OracleReport rep;
  rep.chain_marginal.assign(toy.p, 0.0);
  for (const auto& e : chain.trace) rep.chain_marginal[e.k_current - 1] += 1.0;
  for (auto& v : rep.chain_marginal) v /= static_cast<double>(chain.trace.size());
  rep.oracle_marginal = oracle.k_marginal;
  rep.tv = total_variation(rep.chain_marginal, rep.oracle_marginal);
  rep.threshold = threshold;
  rep.pass = rep.tv <= threshold;
  return rep;
}

}  // namespace pacbo::cli
