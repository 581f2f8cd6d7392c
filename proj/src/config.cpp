#include "pacbo/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pacbo {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("config: " + what);
}

LambdaKind lambda_kind_from(const std::string& s) {
  if (s == "fixed") return LambdaKind::Fixed;
  if (s == "corollary2") return LambdaKind::Corollary2;
  if (s == "corollary3") return LambdaKind::Corollary3;
  if (s == "pacbo_default") return LambdaKind::PacboDefault;
  if (s == "unit_free") return LambdaKind::UnitFree;
  if (s == "custom") return LambdaKind::Custom;
  throw std::invalid_argument("config: unknown lambda kind '" + s + "'");
}

PriorKind prior_kind_from(const std::string& s) {
  if (s == "uniform-ball") return PriorKind::UniformBall;
  if (s == "truncated-student") return PriorKind::TruncatedStudent;
  throw std::invalid_argument("config: unknown prior kind '" + s + "'");
}

}  // namespace

std::string to_string(PriorKind kind) {
  return kind == PriorKind::UniformBall ? "uniform-ball" : "truncated-student";
}

std::string to_string(LambdaKind kind) {
  switch (kind) {
    case LambdaKind::Fixed: return "fixed";
    case LambdaKind::Corollary2: return "corollary2";
    case LambdaKind::Corollary3: return "corollary3";
    case LambdaKind::PacboDefault: return "pacbo_default";
    case LambdaKind::UnitFree: return "unit_free";
    case LambdaKind::Custom: return "custom";
  }
  return "unknown";
}

void PacboConfig::validate() const {
  require(d >= 1, "d must be >= 1");
  require(p >= 1, "p must be >= 1");
  if (!R_auto) {
    require(R > 0.0 && !std::isnan(R), "R must be > 0");
    require(std::isfinite(R) || prior == PriorKind::TruncatedStudent,
            "R = inf is only allowed with the truncated-student prior");
  }
  require(eta >= 0.0 && std::isfinite(eta), "eta must be >= 0");
  require(N >= 1, "N must be >= 1");
  require(burn_in < N, "burn_in must be < N");
  if (prior == PriorKind::TruncatedStudent) require(tau0 > 0.0, "tau0 must be > 0");
  require(kmeans.restarts >= 1, "kmeans.restarts must be >= 1");
  require(kmeans.max_iterations >= 1, "kmeans.max_iterations must be >= 1");
  switch (lambda.kind) {
    case LambdaKind::Fixed:
      require(lambda.value > 0.0, "lambda.value must be > 0");
      break;
    case LambdaKind::Corollary2:
      require(lambda.horizon >= 1, "lambda.T must be >= 1 for corollary2");
      break;
    case LambdaKind::Custom:
      require(!lambda.values.empty(), "lambda.values must be non-empty");
      for (double v : lambda.values) require(v > 0.0, "lambda.values must be > 0");
      break;
    default:
      break;
  }
}

PacboConfig config_from_json(const nlohmann::json& j) {
  PacboConfig cfg;
  cfg.d = j.value("d", cfg.d);
  cfg.p = j.value("p", cfg.p);
  if (j.contains("R")) {
    const auto& r = j.at("R");
    if (r.is_string()) {
      const auto s = r.get<std::string>();
      if (s == "auto") {
        cfg.R_auto = true;
      } else if (s == "inf") {
        cfg.R = std::numeric_limits<double>::infinity();
      } else {
        throw std::invalid_argument("config: R must be a number, \"auto\" or \"inf\"");
      }
    } else {
      cfg.R = r.get<double>();
    }
  }
  cfg.R_auto_prefix = j.value("R_auto_prefix", cfg.R_auto_prefix);
  cfg.eta = j.value("eta", cfg.eta);
  if (j.contains("prior")) {
    const auto& pr = j.at("prior");
    cfg.prior = prior_kind_from(pr.value("kind", std::string("uniform-ball")));
    cfg.tau0 = pr.value("tau0", cfg.tau0);
  }
  if (j.contains("lambda")) {
    const auto& lj = j.at("lambda");
    cfg.lambda.kind = lambda_kind_from(lj.value("kind", std::string("pacbo_default")));
    cfg.lambda.value = lj.value("value", cfg.lambda.value);
    cfg.lambda.horizon = lj.value("T", cfg.lambda.horizon);
    if (lj.contains("values")) cfg.lambda.values = lj.at("values").get<std::vector<double>>();
  }
  cfg.N = j.value("N", cfg.N);
  cfg.burn_in = j.value("burn_in", cfg.burn_in);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("kmeans")) {
    const auto& kj = j.at("kmeans");
    cfg.kmeans.restarts = kj.value("restarts", cfg.kmeans.restarts);
    cfg.kmeans.max_iterations = kj.value("max_iterations", cfg.kmeans.max_iterations);
    cfg.kmeans.tolerance = kj.value("tolerance", cfg.kmeans.tolerance);
  }
  cfg.record_traces = j.value("record_traces", cfg.record_traces);
  cfg.lambda.d = cfg.d;
  cfg.lambda.R = cfg.R;
  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const PacboConfig& cfg) {
  nlohmann::json j;
  j["d"] = cfg.d;
  j["p"] = cfg.p;
  if (cfg.R_auto) {
    j["R"] = "auto";
    j["R_auto_prefix"] = cfg.R_auto_prefix;
  } else if (std::isinf(cfg.R)) {
    j["R"] = "inf";
  } else {
    j["R"] = cfg.R;
  }
  j["eta"] = cfg.eta;
  j["prior"] = {{"kind", to_string(cfg.prior)}, {"tau0", cfg.tau0}};
  nlohmann::json lj{{"kind", to_string(cfg.lambda.kind)}};
  if (cfg.lambda.kind == LambdaKind::Fixed) lj["value"] = cfg.lambda.value;
  if (cfg.lambda.kind == LambdaKind::Corollary2) lj["T"] = cfg.lambda.horizon;
  if (cfg.lambda.kind == LambdaKind::Custom) lj["values"] = cfg.lambda.values;
  j["lambda"] = lj;
  j["N"] = cfg.N;
  j["burn_in"] = cfg.burn_in;
  j["seed"] = cfg.seed;
  j["kmeans"] = {{"restarts", cfg.kmeans.restarts},
                 {"max_iterations", cfg.kmeans.max_iterations},
                 {"tolerance", cfg.kmeans.tolerance}};
  j["record_traces"] = cfg.record_traces;
  return j;
}

PacboConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: parse error in '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

}  // namespace pacbo
