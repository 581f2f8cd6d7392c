#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "pacbo/config.hpp"
#include "pacbo/rng.hpp"
#include "pacbo/types.hpp"

namespace pacbo {

/// log q(k) with q(k) = exp(-eta k) / sum_{i=1}^p exp(-eta i).
double log_q(std::size_t k, std::size_t p, double eta);

/// Product of k uniform laws on B_d(2R); -inf outside the support.
double log_prior_uniform(const Centers& c, double R);

/// Mass P(|sqrt(2) tau0 Z|_2 <= 2R) kept by truncating the Student prior,
/// together with how it was obtained.
struct TruncationMass {
  double mass = 1.0;
  double stderr_ = 0.0;           // Monte Carlo standard error, 0 when exact
  std::string method = "incomplete-beta";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

TruncationMass student_truncation_exact(std::size_t d, double R, double tau0);
TruncationMass student_truncation_mc(std::size_t d, double R, double tau0,
                                     std::uint64_t samples, std::uint64_t seed);

/// Product of k truncated Student(3) laws, scale tau0, truncation radius 2R.
/// R = +inf gives the untruncated law.
double log_prior_student(const Centers& c, double R, double tau0, const TruncationMass& trunc);

struct PriorSpec {
  PriorKind kind = PriorKind::UniformBall;
  std::size_t p = 1;
  std::size_t d = 1;
  double R = 1.0;
  double eta = 0.0;
  double tau0 = 1.0;

  static PriorSpec from_config(const PacboConfig& cfg);
};

/// The model-selection prior pi(c) = sum_k q(k) 1{c in R^{dk}} pi_k(c).
/// Normalizing constants (including the Student truncation mass) are
/// computed once at construction; the object is read-only afterwards.
class Prior {
 public:
  explicit Prior(PriorSpec spec);
  Prior(PriorSpec spec, TruncationMass trunc);

  const PriorSpec& spec() const { return spec_; }
  const TruncationMass& truncation() const { return trunc_; }

  double log_q(std::size_t k) const;
  /// log pi_k(c) for k = c.k(), including its normalizing constant.
  double log_slice_density(const Centers& c) const;
  /// log pi(c). Throws if c.k() is 0 or exceeds p.
  double log_density(const Centers& c) const;

  /// Whether every center lies in the support ball.
  bool in_support(const Centers& c) const;
  /// Largest admissible center norm (2R, or +inf).
  double support_radius() const { return 2.0 * spec_.R; }

  /// Draw from pi: k ~ q, then k independent centers from pi_k.
  Centers sample(Rng& rng) const;
  Centers sample_slice(std::size_t k, Rng& rng) const;

 private:
  void check(const Centers& c) const;

  PriorSpec spec_;
  TruncationMass trunc_;
  double log_norm_const_ = 0.0;  // sum_{i=1}^p exp(-eta i), in log
  double log_center_const_ = 0.0;
};

}  // namespace pacbo

namespace pacbo {

/// log pi(c) for the configured prior.
inline double log_prior(const Centers& c, const Prior& prior) { return prior.log_density(c); }

}  // namespace pacbo
