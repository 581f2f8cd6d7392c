#include "pacbo/loss_score.hpp"

#include <limits>
#include <stdexcept>

namespace pacbo {

double instantaneous_loss(const Centers& c, std::span<const double> x) {
  if (c.dim() != x.size()) throw std::invalid_argument("instantaneous_loss: dimension mismatch");
  if (c.k() == 0) throw std::invalid_argument("instantaneous_loss: no centers");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.k(); ++j) {
    const double dist = squared_distance(c[j], x);
    if (dist < best) best = dist;
  }
  return best;
}

void ScoreContext::check() const {
  const std::size_t n = t();
  if (n == 0) return;
  if (data == nullptr || data->size() < n)
    throw std::invalid_argument("ScoreContext: fewer observations than output losses");
  if (lambdas.size() < n) throw std::invalid_argument("ScoreContext: missing lambda values");
}

double score(const Centers& c, const ScoreContext& ctx) {
  ctx.check();
  const std::size_t n = ctx.t();
  if (n > 0 && c.dim() != ctx.data->dim())
    throw std::invalid_argument("score: dimension mismatch");
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const double loss = instantaneous_loss(c, (*ctx.data)[s]);
    const double diff = loss - ctx.output_losses[s];
    total += loss + 0.5 * ctx.lambdas[s] * diff * diff;
  }
  return total;
}

double ScoreAccumulator::extend(std::span<const double> x, double output_loss,
                                double lambda_prev) {
  const double loss = instantaneous_loss(c_, x);
  const double diff = loss - output_loss;
  value_ += loss + 0.5 * lambda_prev * diff * diff;
  ++t_;
  return value_;
}

double ScoreAccumulator::sync(const ScoreContext& ctx) {
  ctx.check();
  if (t_ > ctx.t())
    throw std::invalid_argument("ScoreAccumulator: cache is ahead of the context");
  for (std::size_t s = t_; s < ctx.t(); ++s)
    extend((*ctx.data)[s], ctx.output_losses[s], ctx.lambdas[s]);
  return value_;
}

void StreamHistory::set_initial_lambda(double lambda0) {
  if (!lambdas_.empty()) throw std::logic_error("StreamHistory: lambda_0 already set");
  lambdas_.push_back(lambda0);
}

void StreamHistory::append(std::span<const double> x, double output_loss, double lambda) {
  if (lambdas_.empty()) throw std::logic_error("StreamHistory: lambda_0 not set");
  observations_.push_back(x);
  output_losses_.push_back(output_loss);
  lambdas_.push_back(lambda);
}

ScoreContext StreamHistory::context() const {
  return ScoreContext{&observations_, output_losses_, lambdas_};
}

}  // namespace pacbo
