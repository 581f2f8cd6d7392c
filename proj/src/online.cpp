#include "pacbo/online.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pacbo/loss_score.hpp"
#include "pacbo/priors.hpp"
#include "pacbo/quasi_posterior.hpp"

namespace pacbo {

double lambda_at(const LambdaSchedule& s, std::size_t t) {
  const double dd = static_cast<double>(s.d);
  const double rt = std::sqrt(static_cast<double>(t == 0 ? 1 : t));
  switch (s.kind) {
    case LambdaKind::Fixed:
      return s.value;
    case LambdaKind::Corollary2:
      if (s.horizon == 0) throw std::invalid_argument("lambda_at: corollary2 needs a horizon");
      if (t > s.horizon) throw std::out_of_range("lambda_at: t beyond the corollary2 horizon");
      return (dd + 2.0) / (2.0 * std::sqrt(static_cast<double>(s.horizon)) * s.R * s.R);
    case LambdaKind::Corollary3:
      if (t == 0) return 1.0;
      return (dd + 2.0) / (2.0 * rt * s.R * s.R);
    case LambdaKind::PacboDefault:
      return 0.6 * (dd + 2.0) / (2.0 * rt);
    case LambdaKind::UnitFree:
      if (t == 0) return 1.0;
      return 1.0 / rt;
    case LambdaKind::Custom:
      if (t >= s.values.size()) throw std::out_of_range("lambda_at: t beyond the custom list");
      return s.values[t];
  }
  throw std::invalid_argument("lambda_at: unknown schedule");
}

double resolve_radius(const PacboConfig& cfg, const Dataset& data) {
  if (!cfg.R_auto) return cfg.R;
  const std::size_t n =
      cfg.R_auto_prefix == 0 ? data.size() : std::min(cfg.R_auto_prefix, data.size());
  if (n == 0) throw std::invalid_argument("R = auto needs at least one observation");
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, squared_norm(data[i]));
  if (best == 0.0) throw std::invalid_argument("R = auto: calibration prefix is all zeros");
  return std::sqrt(best);
}

RunRecord run_stream(const Dataset& data, const PacboConfig& cfg_in) {
  cfg_in.validate();
  if (!data.empty() && data.dim() != cfg_in.d)
    throw std::invalid_argument("run_stream: data dimension does not match the config");
  if (!data.all_finite()) throw std::invalid_argument("run_stream: non-finite observation");

  PacboConfig cfg = cfg_in;
  cfg.R = resolve_radius(cfg_in, data);
  cfg.R_auto = false;
  LambdaSchedule schedule = cfg.lambda;
  schedule.d = cfg.d;
  schedule.R = cfg.R;

  using clock = std::chrono::steady_clock;
  const Prior prior(PriorSpec::from_config(cfg));
  StreamHistory history(cfg.d);
  history.set_initial_lambda(lambda_at(schedule, 0));

  RunRecord record;
  record.R = cfg.R;

  auto started = clock::now();
  Rng prior_rng = seeded_rng(cfg.seed, 0);
  StepRecord current;
  current.t = 1;
  current.centers = prior.sample(prior_rng);
  current.lambda = history.lambdas()[0];

  KMeansOptions kmeans_opts = cfg.kmeans;
  kmeans_opts.jitter = 1e-6 * (std::isfinite(cfg.R) ? cfg.R : 1.0);

  const double r2 = cfg.R * cfg.R;
  const std::size_t T = data.size();
  double cumulative = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    const auto x = data[t - 1];
    if (squared_norm(x) > r2) ++record.radius_exceedances;
    current.loss = instantaneous_loss(current.centers, x);
    cumulative += current.loss;
    current.cumulative_loss = cumulative;
    current.wall_ms =
        std::chrono::duration<double, std::milli>(clock::now() - started).count();

    const double lambda_t = lambda_at(schedule, t);
    history.append(x, current.loss, lambda_t);
    const std::size_t k_warm = current.k();
    record.steps.push_back(std::move(current));

    // c_hat_{t+1} ~ exp(-lambda_t S_t) pi via the transdimensional chain.
    started = clock::now();
    const TargetDensity tgt{&prior, history.context(), lambda_t};
    Rng step_rng = seeded_rng(cfg.seed, t + 1);
    KMeansCache fits(history.observations(), t, kmeans_opts, step_rng.split(2));
    const ProposalKernel kernel(fits, tau_schedule(cfg.p, t + 1));
    ChainState init = make_state(
        project_into_support(fits.get(k_warm).centers, prior.support_radius()), tgt);
    Rng chain_rng = step_rng.split(1);
    ChainResult chain = run_chain(std::move(init), cfg.N, tgt, kernel, chain_rng,
                                  cfg.record_traces);

    current = StepRecord{};
    current.t = t + 1;
    current.centers = std::move(chain.final_state.c);
    current.lambda = lambda_t;
    current.acceptance_rate = static_cast<double>(chain.accepted) / static_cast<double>(cfg.N);
    current.trace = std::move(chain.trace);
  }
  current.loss = std::numeric_limits<double>::quiet_NaN();
  current.cumulative_loss = cumulative;
  current.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - started).count();
  record.next = std::move(current);
  return record;
}

}  // namespace pacbo
