#pragma once

#include <cstddef>

#include "pacbo/kmeans.hpp"
#include "pacbo/rng.hpp"
#include "pacbo/types.hpp"

namespace pacbo {

/// Location vector and scale of the product Student proposal on R^{dk}.
struct ProposalParams {
  Centers locations;
  double tau = 1.0;

  std::size_t k() const { return locations.k(); }
};

/// log of prod_j C_tau^{-1} (1 + |c_j - m_j|^2 / (6 tau^2))^{-(3+d)/2}:
/// k independent d-variate Student(3) blocks with scale matrix 2 tau^2 I.
double student_log_density(const Centers& c, const ProposalParams& params);

/// One draw from the proposal; blocks are independent.
Centers student_sample(const ProposalParams& params, Rng& rng);

/// tau' = 1 / sqrt(p t). t = 0 is treated as t = 1.
double tau_schedule(std::size_t p, std::size_t t);

/// Proposal source for one time step: k-means locations fitted on a fixed
/// data prefix and a single scale shared by every k.
class ProposalKernel {
 public:
  ProposalKernel(KMeansCache& cache, double tau) : cache_(&cache), tau_(tau) {}

  ProposalParams params(std::size_t k) const { return {cache_->get(k).centers, tau_}; }
  const Centers& locations(std::size_t k) const { return cache_->get(k).centers; }
  double tau() const { return tau_; }

 private:
  KMeansCache* cache_;
  double tau_;
};

}  // namespace pacbo
