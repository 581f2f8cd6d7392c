#include "pacbo/rjmcmc.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pacbo {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

ChainState make_state(Centers c, const TargetDensity& tgt) {
  ChainState s;
  s.log_target = log_target(c, tgt);
  s.c = std::move(c);
  return s;
}

std::size_t propose_dimension(std::size_t k, std::size_t p, Rng& rng) {
  if (k < 1 || k > p) throw std::out_of_range("propose_dimension: k outside [1, p]");
  switch (rng.uniform_index(3)) {
    case 0: return k > 1 ? k - 1 : k;
    case 2: return k < p ? k + 1 : k;
    default: return k;
  }
}

double log_dimension_proposal(std::size_t from, std::size_t to, std::size_t p) {
  if (from < 1 || from > p || to < 1 || to > p) return kNegInf;
  const std::size_t gap = from > to ? from - to : to - from;
  if (gap > 1) return kNegInf;
  if (gap == 1) return std::log(1.0 / 3.0);
  // Self move: 1/3 plus the mass of every out-of-range neighbour.
  double mass = 1.0 / 3.0;
  if (from == 1) mass += 1.0 / 3.0;
  if (from == p) mass += 1.0 / 3.0;
  return std::log(mass);
}

double acceptance_log_prob(const ChainState& current, const Centers& proposal,
                           double proposal_log_target, const ProposalParams& current_params,
                           const ProposalParams& proposal_params, std::size_t p) {
  if (current.log_target == kNegInf)
    throw std::logic_error("acceptance_log_prob: current state outside the target support");
  if (proposal_log_target == kNegInf) return kNegInf;
  const double log_ratio =
      (proposal_log_target - current.log_target) +
      (log_dimension_proposal(proposal.k(), current.k(), p) -
       log_dimension_proposal(current.k(), proposal.k(), p)) +
      (student_log_density(current.c, current_params) -
       student_log_density(proposal, proposal_params));
  if (std::isnan(log_ratio)) return kNegInf;
  return std::min(0.0, log_ratio);
}

StepResult step(const ChainState& current, const TargetDensity& tgt,
                const ProposalKernel& kernel, Rng& rng) {
  const std::size_t p = tgt.prior->spec().p;
  const std::size_t k_new = propose_dimension(current.k(), p, rng);
  ProposalParams proposal_params = kernel.params(k_new);
  Centers proposal = student_sample(proposal_params, rng);
  const double proposal_lt = log_target(proposal, tgt);
  const double log_alpha =
      acceptance_log_prob(current, proposal, proposal_lt, kernel.params(current.k()),
                          proposal_params, p);
  const double u = rng.uniform();

  StepResult out{current, {}};
  out.state.n = current.n + 1;
  out.entry.n = out.state.n;
  out.entry.k_proposed = k_new;
  out.entry.alpha = std::exp(log_alpha);
  out.entry.accepted = u < out.entry.alpha;
  if (out.entry.accepted) {
    out.state.c = std::move(proposal);
    out.state.log_target = proposal_lt;
  }
  out.entry.k_current = out.state.k();
  return out;
}

ChainResult run_chain(ChainState init, std::size_t N, const TargetDensity& tgt,
                      const ProposalKernel& kernel, Rng& rng, bool keep_trace) {
  if (N == 0) throw std::invalid_argument("run_chain: N must be >= 1");
  if (init.log_target == kNegInf)
    throw std::invalid_argument("run_chain: initial state outside the target support");
  ChainResult out{std::move(init), {}, 0};
  if (keep_trace) out.trace.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    auto [next, entry] = step(out.final_state, tgt, kernel, rng);
    out.final_state = std::move(next);
    if (entry.accepted) ++out.accepted;
    if (keep_trace) out.trace.push_back(entry);
  }
  return out;
}

Centers project_into_support(Centers c, double radius) {
  if (!std::isfinite(radius)) return c;
  const double target = radius - 1e-9 * radius / 2.0;
  for (std::size_t j = 0; j < c.k(); ++j) {
    auto row = c[j];
    const double norm = std::sqrt(squared_norm(row));
    if (norm > radius) {
      const double scale = target / norm;
      for (auto& v : row) v *= scale;
    }
  }
  return c;
}

}  // namespace pacbo
