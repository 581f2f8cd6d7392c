#pragma once

#include <cstddef>
#include <vector>

#include "pacbo/proposals.hpp"
#include "pacbo/quasi_posterior.hpp"
#include "pacbo/rng.hpp"

namespace pacbo {

/// Current chain position (k, c) with its cached log target.
struct ChainState {
  Centers c;
  double log_target = 0.0;
  std::size_t n = 0;

  std::size_t k() const { return c.k(); }
};

ChainState make_state(Centers c, const TargetDensity& tgt);

struct TraceEntry {
  std::size_t n = 0;            // iteration index, 1-based
  std::size_t k_current = 0;    // k after the iteration
  std::size_t k_proposed = 0;
  double alpha = 0.0;
  bool accepted = false;
};

using ChainTrace = std::vector<TraceEntry>;

/// Draws k' from {k-1, k, k+1} with mass 1/3 each. Candidates outside
/// [1, p] become k (self-transition), so q(k, k') = q(k', k) = 1/3 for
/// every admissible k != k'.
std::size_t propose_dimension(std::size_t k, std::size_t p, Rng& rng);

/// log q(k, k') under the rule above.
double log_dimension_proposal(std::size_t from, std::size_t to, std::size_t p);

/// log alpha = min(0, log target(c') - log target(c) + log q(k', k) - log q(k, k')
///                    + log rho_k(c | loc_k, tau) - log rho_k'(c' | loc_k', tau)).
/// The swap map (v2, c') = (c, v1) has unit Jacobian.
double acceptance_log_prob(const ChainState& current, const Centers& proposal,
                           double proposal_log_target, const ProposalParams& current_params,
                           const ProposalParams& proposal_params, std::size_t p);

struct StepResult {
  ChainState state;
  TraceEntry entry;
};

/// One iteration of the transdimensional kernel.
StepResult step(const ChainState& current, const TargetDensity& tgt,
                const ProposalKernel& kernel, Rng& rng);

struct ChainResult {
  ChainState final_state;
  ChainTrace trace;
  std::size_t accepted = 0;
};

/// N iterations from init. trace is filled only when keep_trace is set.
ChainResult run_chain(ChainState init, std::size_t N, const TargetDensity& tgt,
                      const ProposalKernel& kernel, Rng& rng, bool keep_trace = true);

/// Radially pulls every center into the ball of radius `radius` minus a
/// margin of 1e-9 R. No-op for infinite radius.
Centers project_into_support(Centers c, double radius);

}  // namespace pacbo
