#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pacbo/types.hpp"

namespace pacbo {

/// min_j |c_j - x|_2^2.
double instantaneous_loss(const Centers& c, std::span<const double> x);

/// Everything needed to evaluate S_t at an arbitrary c: the first t
/// observations, the scalar losses l(c_hat_s, x_s) of the past outputs and
/// lambda_0 .. lambda_{t-1}. The past outputs themselves are not needed.
struct ScoreContext {
  const Dataset* data = nullptr;
  std::span<const double> output_losses;  // size t
  std::span<const double> lambdas;        // size >= t

  std::size_t t() const { return output_losses.size(); }
  void check() const;
};

/// S_t(c) = sum_{s<=t} [ l(c,x_s) + lambda_{s-1}/2 (l(c,x_s) - l(c_hat_s,x_s))^2 ].
double score(const Centers& c, const ScoreContext& ctx);

/// Running value of S_t(c) for one fixed c.
class ScoreAccumulator {
 public:
  explicit ScoreAccumulator(Centers c) : c_(std::move(c)) {}

  /// Appends step t+1. output_loss = l(c_hat_{t+1}, x_{t+1}) and
  /// lambda_prev = lambda_t.
  double extend(std::span<const double> x, double output_loss, double lambda_prev);

  double value() const { return value_; }
  std::size_t t() const { return t_; }
  const Centers& centers() const { return c_; }

  /// Brings the accumulator up to ctx.t(). Throws if the cached prefix is
  /// longer than the context.
  double sync(const ScoreContext& ctx);

 private:
  Centers c_;
  double value_ = 0.0;
  std::size_t t_ = 0;
};

/// Owns x_{1:t}, l(c_hat_s, x_s) and lambda_0..lambda_t for a stream.
class StreamHistory {
 public:
  explicit StreamHistory(std::size_t dim) : observations_(dim) {}

  void set_initial_lambda(double lambda0);
  /// Records x_t with the loss of the output that was in force for it and
  /// the lambda_t that will weight the next quasi-posterior.
  void append(std::span<const double> x, double output_loss, double lambda);

  std::size_t t() const { return output_losses_.size(); }
  const Dataset& observations() const { return observations_; }
  const std::vector<double>& output_losses() const { return output_losses_; }
  const std::vector<double>& lambdas() const { return lambdas_; }

  /// Context for S_t with the current t.
  ScoreContext context() const;

 private:
  Dataset observations_;
  std::vector<double> output_losses_;
  std::vector<double> lambdas_;
};

}  // namespace pacbo
