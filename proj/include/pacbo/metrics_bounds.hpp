#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pacbo/config.hpp"
#include "pacbo/online.hpp"
#include "pacbo/rng.hpp"
#include "pacbo/types.hpp"

namespace pacbo {

// ---------------------------------------------------------------------------
// Oracle cumulative loss

struct OclResult {
  double value = 0.0;  // an upper approximation of the true infimum
  Centers centers;
};

/// inf over C(k_star, R) of sum_{s<=n} l(c, x_s), approximated by k-means
/// with many restarts and centers clipped to |c_j|_2 <= R. The minimum over
/// every k <= k_star is returned, so the value is non-increasing in k_star.
OclResult ocl(const Dataset& data, std::size_t n, std::size_t k_star, double R,
              const KMeansOptions& opts, Rng& rng);

/// Default k-means options for OCL: 50 restarts.
KMeansOptions ocl_kmeans_options();

// ---------------------------------------------------------------------------
// Regret bound right-hand sides (the part added to the oracle loss)

/// Uniform prior, fixed lambda. Requires lambda >= (d+2)/(2 T R^2).
double bound_corollary1(std::size_t k, std::size_t T, std::size_t d, double R, double lambda,
                        double eta, std::size_t p);

/// Uniform prior, lambda = (d+2)/(2 sqrt(T) R^2).
double bound_corollary2(std::size_t k, std::size_t T, std::size_t d, double R, double eta,
                        std::size_t p);

/// Uniform prior, adaptive lambda_t = (d+2)/(2 sqrt(t) R^2).
double bound_corollary3(std::size_t k, std::size_t T, std::size_t d, double R, double eta,
                        std::size_t p);

/// (Gamma((3+d)/2) / (Gamma(3/2) Gamma(d/2+1)))^{1/d}.
double student_cd(std::size_t d);

struct StudentBoundParams {
  std::size_t k = 1;
  std::size_t T = 1;
  std::size_t d = 1;
  double R = 1.0;
  double tau0 = 1.0;
  double eta = 0.0;
  std::size_t p = 1;
  double center_norm_sum = 0.0;          // sum_j |c_j|_2 of the comparison centers
  std::optional<double> max_obs_norm;    // max_t |x_t|_2, defaults to R
  bool adaptive = false;                 // lambda_t = 1/sqrt(t) instead of 1/sqrt(T)
};

/// Truncated Student prior with lambda = 1/sqrt(T) (or 1/sqrt(t) when
/// adaptive). Requires T >= 12 d tau0^4 / (c_d^2 R^4).
double bound_student(const StudentBoundParams& b);

/// Upper bound on K(rho, pi) for rho = truncated Student around `centers`
/// with scale tau and radii xi, pi = the truncated Student prior.
/// Requires 0 < tau^2 <= sqrt(3) R^2 / (6 sqrt(d)), 0 < xi_j <= R and
/// |centers_j|_2 <= R.
double kl_bound_student(std::size_t k, std::size_t d, const Centers& centers, double tau,
                        const std::vector<double>& xi, double tau0, double R, double eta,
                        std::size_t p);

/// Constant inside the Student KL bound:
/// Gamma((3+d)/2) / (Gamma(3/2) Gamma(d/2+1) 6^{d/2}).
double student_kl_constant(std::size_t d);

// ---------------------------------------------------------------------------
// Accuracy and regret reporting

/// #{t : K_t = k*_t}.
std::size_t correct_k_count(const std::vector<std::size_t>& estimated,
                            const std::vector<std::size_t>& truth);
std::size_t correct_k_count(const RunRecord& record, const std::vector<std::size_t>& truth);

/// One repetition of an experiment: its stream, truth and run.
struct Repetition {
  Dataset data;
  std::vector<std::size_t> k_true;
  RunRecord run;
};

struct RegretRow {
  std::size_t t = 0;
  double ecl = 0.0;        // mean cumulative loss across repetitions
  double ocl = 0.0;        // mean OCL upper approximation
  double regret = 0.0;     // ecl - ocl, a lower approximation of the regret
  double bound_cor3 = 0.0;
  std::size_t k_true = 0;  // from the first repetition
  std::size_t k_mode = 0;  // most frequent K_t across repetitions
};

struct RegretOptions {
  std::size_t stride = 10;              // rows at t = stride, 2 stride, ... and T
  std::vector<std::size_t> extra_times; // always included
  double eta = 0.0;
  std::size_t p = 20;
  KMeansOptions ocl_kmeans = ocl_kmeans_options();
  std::uint64_t seed = 7;
};

std::vector<RegretRow> regret_report(const std::vector<Repetition>& reps, double R,
                                     const RegretOptions& opts);

}  // namespace pacbo
