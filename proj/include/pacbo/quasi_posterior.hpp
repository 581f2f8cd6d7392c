#pragma once

#include <cstddef>
#include <vector>

#include "pacbo/loss_score.hpp"
#include "pacbo/priors.hpp"

namespace pacbo {

/// Unnormalized Gibbs quasi-posterior exp(-lambda S_t(c)) pi(c). Holds
/// non-owning references; the prior and the stream must outlive it.
struct TargetDensity {
  const Prior* prior = nullptr;
  ScoreContext context;
  double lambda = 0.0;  // 0 gives the prior itself
};

/// -lambda S_t(c) + log pi(c); -inf outside the prior support.
double log_target(const Centers& c, const TargetDensity& tgt);

struct GridSpec {
  std::size_t cells_per_axis = 200;
  bool keep_cells = false;
};

inline constexpr std::size_t kMaxGridCells = 10'000'000;

/// Riemann-sum normalization of the quasi-posterior on [-2R, 2R]^{dk}
/// for every k. Only for toy instances: d <= 2, p <= 3.
struct GridOracleResult {
  std::size_t cells_per_axis = 0;
  double half_width = 0.0;
  double log_normalizer = 0.0;            // log sum_k int exp(log_target)
  std::vector<double> slice_log_mass;     // log int over R^{dk}, index k-1
  std::vector<double> k_marginal;         // normalized, index k-1
  std::vector<std::vector<double>> cells; // per slice cell probabilities (optional)

  /// Normalized log density at c under the oracle's normalizer.
  double log_density(const Centers& c, const TargetDensity& tgt) const;
};

GridOracleResult grid_oracle(const TargetDensity& tgt, const GridSpec& grid);

}  // namespace pacbo
