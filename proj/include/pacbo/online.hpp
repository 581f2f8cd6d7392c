#pragma once

#include <cstddef>
#include <vector>

#include "pacbo/config.hpp"
#include "pacbo/rjmcmc.hpp"
#include "pacbo/types.hpp"

namespace pacbo {

/// Inverse temperature lambda_t for t >= 0.
///   corollary3 / unit_free: lambda_0 = 1.
///   pacbo_default: lambda_0 = lambda_1 so the sequence stays non-increasing.
///   corollary2: constant, throws past the horizon T.
///   custom: values[t], throws past the end of the list.
double lambda_at(const LambdaSchedule& schedule, std::size_t t);

/// Output of one round. Row t holds c_hat_t, which was computed from
/// x_{1:t-1} only, and its loss on x_t.
struct StepRecord {
  std::size_t t = 0;
  Centers centers;
  double loss = 0.0;             // l(c_hat_t, x_t); NaN for the final prediction
  double cumulative_loss = 0.0;
  double lambda = 0.0;           // lambda_{t-1}, the temperature that produced c_hat_t
  double acceptance_rate = 0.0;  // of the chain that produced c_hat_t (0 at t = 1)
  double wall_ms = 0.0;
  ChainTrace trace;              // empty unless traces are recorded

  std::size_t k() const { return centers.k(); }
};

struct RunRecord {
  double R = 0.0;                 // radius actually used (after "auto")
  std::size_t radius_exceedances = 0;  // observations with |x|_2 > R
  std::vector<StepRecord> steps;  // t = 1..T
  StepRecord next;                // c_hat_{T+1}
};

/// Radius for a run: cfg.R, or the max norm over the calibration prefix
/// when cfg.R_auto is set.
double resolve_radius(const PacboConfig& cfg, const Dataset& data);

/// Algorithms 1/2 with the transdimensional sampler at every round after the
/// first. Deterministic in (cfg, data).
RunRecord run_stream(const Dataset& data, const PacboConfig& cfg);

}  // namespace pacbo
