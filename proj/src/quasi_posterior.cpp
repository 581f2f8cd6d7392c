#include "pacbo/quasi_posterior.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pacbo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp.
struct LogSum {
  double max = kNegInf;
  double sum = 0.0;
  void add(double v) {
    if (v == kNegInf) return;
    if (v <= max) {
      sum += std::exp(v - max);
    } else {
      sum = sum * std::exp(max - v) + 1.0;
      max = v;
    }
  }
  double value() const { return max == kNegInf ? kNegInf : max + std::log(sum); }
};

}  // namespace

double log_target(const Centers& c, const TargetDensity& tgt) {
  if (tgt.prior == nullptr) throw std::invalid_argument("log_target: no prior");
  if (tgt.lambda < 0.0) throw std::invalid_argument("log_target: lambda must be >= 0");
  const double lp = tgt.prior->log_density(c);
  if (lp == kNegInf) return kNegInf;
  if (tgt.lambda == 0.0 || tgt.context.t() == 0) return lp;
  return lp - tgt.lambda * score(c, tgt.context);
}

double GridOracleResult::log_density(const Centers& c, const TargetDensity& tgt) const {
  return log_target(c, tgt) - log_normalizer;
}

GridOracleResult grid_oracle(const TargetDensity& tgt, const GridSpec& grid) {
  if (tgt.prior == nullptr) throw std::invalid_argument("grid_oracle: no prior");
  const PriorSpec& spec = tgt.prior->spec();
  if (spec.d > 2 || spec.p > 3)
    throw std::invalid_argument("grid_oracle: limited to d <= 2 and p <= 3");
  if (!std::isfinite(spec.R)) throw std::invalid_argument("grid_oracle: R must be finite");
  if (grid.cells_per_axis == 0) throw std::invalid_argument("grid_oracle: empty grid");

  const std::size_t m = grid.cells_per_axis;
  std::size_t total = 0;
  for (std::size_t k = 1; k <= spec.p; ++k) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < spec.d * k; ++i) {
      if (cells > kMaxGridCells / m) throw std::invalid_argument("grid_oracle: grid too large");
      cells *= m;
    }
    total += cells;
    if (total > kMaxGridCells) throw std::invalid_argument("grid_oracle: grid too large");
  }

  GridOracleResult out;
  out.cells_per_axis = m;
  out.half_width = 2.0 * spec.R;
  const double h = 2.0 * out.half_width / static_cast<double>(m);
  const double log_h = std::log(h);

  LogSum all;
  std::vector<std::vector<double>> raw(spec.p);
  for (std::size_t k = 1; k <= spec.p; ++k) {
    const std::size_t n = spec.d * k;
    std::vector<std::size_t> idx(n, 0);
    Centers c(spec.d, std::vector<double>(n));
    LogSum slice;
    auto& cell_values = raw[k - 1];
    for (;;) {
      for (std::size_t i = 0; i < n; ++i)
        c.coords()[i] = -out.half_width + (static_cast<double>(idx[i]) + 0.5) * h;
      const double v = log_target(c, tgt);
      slice.add(v);
      if (grid.keep_cells) cell_values.push_back(v);
      std::size_t pos = 0;
      while (pos < n && ++idx[pos] == m) idx[pos++] = 0;
      if (pos == n) break;
    }
    const double slice_log = slice.value() + static_cast<double>(n) * log_h;
    out.slice_log_mass.push_back(slice_log);
    all.add(slice_log);
  }
  out.log_normalizer = all.value();
  for (std::size_t k = 1; k <= spec.p; ++k) {
    out.k_marginal.push_back(std::exp(out.slice_log_mass[k - 1] - out.log_normalizer));
    if (grid.keep_cells) {
      const double cell_log_vol = static_cast<double>(spec.d * k) * log_h;
      std::vector<double> probs;
      probs.reserve(raw[k - 1].size());
      for (double v : raw[k - 1]) probs.push_back(std::exp(v + cell_log_vol - out.log_normalizer));
      out.cells.push_back(std::move(probs));
    }
  }
  return out;
}

}  // namespace pacbo
