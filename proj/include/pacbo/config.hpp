#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

namespace pacbo {

enum class PriorKind { UniformBall, TruncatedStudent };

enum class LambdaKind {
  Fixed,        // lambda_t = value for all t
  Corollary2,   // (d+2) / (2 sqrt(T) R^2), horizon T required
  Corollary3,   // (d+2) / (2 sqrt(t) R^2), lambda_0 = 1
  PacboDefault, // 0.6 (d+2) / (2 sqrt(t))
  UnitFree,     // 1 / sqrt(t), lambda_0 = 1
  Custom,       // explicit list lambda_0, lambda_1, ...
};

struct LambdaSchedule {
  LambdaKind kind = LambdaKind::PacboDefault;
  double value = 1.0;              // Fixed
  std::size_t d = 2;
  double R = 1.0;                  // Corollary2 / Corollary3
  std::size_t horizon = 0;         // Corollary2
  std::vector<double> values;      // Custom
};

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iterations = 100;
  double tolerance = 1e-8;         // relative change of the within-cluster loss
  double jitter = 1e-6;            // absolute jitter for duplicated centers
};

/// Run parameters. Radii are in the units of the observations.
struct PacboConfig {
  std::size_t d = 2;
  std::size_t p = 20;
  double R = 15.0;
  bool R_auto = false;             // R = max |x|_2 over the first R_auto_prefix points
  std::size_t R_auto_prefix = 0;   // 0 means the whole stream
  double eta = 0.0;
  PriorKind prior = PriorKind::UniformBall;
  double tau0 = 1.0;
  LambdaSchedule lambda;
  std::size_t N = 500;
  std::size_t burn_in = 0;
  std::uint64_t seed = 42;
  KMeansOptions kmeans;
  bool record_traces = false;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

PacboConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PacboConfig& cfg);
PacboConfig load_config(const std::string& path);

std::string to_string(PriorKind kind);
std::string to_string(LambdaKind kind);

}  // namespace pacbo
