#include "pacbo/proposals.hpp"

#include <cmath>
#include <stdexcept>

#include "pacbo/student_t.hpp"

namespace pacbo {

double student_log_density(const Centers& c, const ProposalParams& params) {
  if (c.dim() != params.locations.dim() || c.k() != params.locations.k())
    throw std::invalid_argument("student_log_density: dimension mismatch");
  if (!(params.tau > 0.0)) throw std::invalid_argument("student_log_density: tau must be > 0");
  double total = 0.0;
  for (std::size_t j = 0; j < c.k(); ++j)
    total += student3::log_density(c[j], params.locations[j], params.tau);
  return total;
}

Centers student_sample(const ProposalParams& params, Rng& rng) {
  if (!(params.tau > 0.0)) throw std::invalid_argument("student_sample: tau must be > 0");
  Centers out(params.locations.dim(), std::vector<double>(params.locations.coords().size()));
  for (std::size_t j = 0; j < out.k(); ++j)
    student3::sample(out[j], params.locations[j], params.tau, rng);
  return out;
}

double tau_schedule(std::size_t p, std::size_t t) {
  if (p == 0) throw std::invalid_argument("tau_schedule: p must be >= 1");
  if (t == 0) t = 1;
  return 1.0 / std::sqrt(static_cast<double>(p) * static_cast<double>(t));
}

}  // namespace pacbo
