#include "pacbo/metrics_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "pacbo/kmeans.hpp"
#include "pacbo/rjmcmc.hpp"

namespace pacbo {

namespace {

double sqrtd(std::size_t v) { return std::sqrt(static_cast<double>(v)); }

}  // namespace

KMeansOptions ocl_kmeans_options() {
  KMeansOptions o;
  o.restarts = 50;
  return o;
}

OclResult ocl(const Dataset& data, std::size_t n, std::size_t k_star, double R,
              const KMeansOptions& opts, Rng& rng) {
  if (k_star == 0) throw std::invalid_argument("ocl: k_star must be >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("ocl: R must be > 0");
  OclResult best;
  best.value = std::numeric_limits<double>::infinity();
  if (n == 0) {
    best.value = 0.0;
    best.centers = Centers(data.dim(), std::vector<double>(data.dim(), 0.0));
    return best;
  }
  KMeansCache fits(data, n, opts, rng.split(n));
  for (std::size_t k = 1; k <= k_star; ++k) {
    // Clip to the closed ball of radius R (project_into_support leaves a
    // relative margin of 1e-9, which keeps the point feasible).
    Centers clipped = project_into_support(fits.get(k).centers, R);
    const double loss = within_cluster_loss(clipped, data, n);
    if (loss < best.value) {
      best.value = loss;
      best.centers = std::move(clipped);
    }
  }
  return best;
}

double bound_corollary1(std::size_t k, std::size_t T, std::size_t d, double R, double lambda,
                        double eta, std::size_t p) {
  if (k < 1 || T < 1 || d < 1 || p < 1) throw std::invalid_argument("bound_corollary1: bad sizes");
  const double dd = static_cast<double>(d), kk = static_cast<double>(k),
               TT = static_cast<double>(T);
  const double threshold = (dd + 2.0) / (2.0 * TT * R * R);
  if (!(lambda >= threshold))
    throw std::domain_error("bound_corollary1: lambda below (d+2)/(2 T R^2)");
  return dd * kk / (2.0 * lambda) * std::log(8.0 * R * R * lambda * TT / (dd + 2.0)) +
         eta / lambda * kk + std::log(static_cast<double>(p)) / lambda + dd / (2.0 * lambda) +
         81.0 * lambda * TT * std::pow(R, 4) / 2.0;
}

namespace {

double corollary23(std::size_t k, std::size_t T, std::size_t d, double R, double eta,
                   std::size_t p, double last_divisor) {
  if (k < 1 || T < 1 || d < 1 || p < 1) throw std::invalid_argument("bound_corollary: bad sizes");
  if (!(R > 0.0) || eta < 0.0) throw std::invalid_argument("bound_corollary: bad R or eta");
  const double dd = static_cast<double>(d), kk = static_cast<double>(k);
  const double rt = sqrtd(T), R2 = R * R;
  return kk * dd * R2 / (dd + 2.0) * rt * std::log(4.0 * rt) +
         kk * 2.0 * R2 * eta / (dd + 2.0) * rt +
         (2.0 * R2 * std::log(static_cast<double>(p)) / (dd + 2.0) + dd * R2 / (dd + 2.0) +
          81.0 * (dd + 2.0) * R2 / last_divisor) *
             rt;
}

}  // namespace

double bound_corollary2(std::size_t k, std::size_t T, std::size_t d, double R, double eta,
                        std::size_t p) {
  return corollary23(k, T, d, R, eta, p, 4.0);
}

double bound_corollary3(std::size_t k, std::size_t T, std::size_t d, double R, double eta,
                        std::size_t p) {
  return corollary23(k, T, d, R, eta, p, 2.0);
}

double student_cd(std::size_t d) {
  const double dd = static_cast<double>(d);
  const double log_ratio =
      std::lgamma((3.0 + dd) / 2.0) - std::lgamma(1.5) - std::lgamma(dd / 2.0 + 1.0);
  return std::exp(log_ratio / dd);
}

double student_kl_constant(std::size_t d) {
  const double dd = static_cast<double>(d);
  return std::exp(std::lgamma((3.0 + dd) / 2.0) - std::lgamma(1.5) - std::lgamma(dd / 2.0 + 1.0) -
                  0.5 * dd * std::log(6.0));
}

double bound_student(const StudentBoundParams& b) {
  if (b.k < 1 || b.T < 1 || b.d < 1 || b.p < 1) throw std::invalid_argument("bound_student: bad sizes");
  if (!(b.R > 0.0) || !(b.tau0 > 0.0) || b.eta < 0.0)
    throw std::invalid_argument("bound_student: bad R, tau0 or eta");
  const double dd = static_cast<double>(b.d), kk = static_cast<double>(b.k),
               TT = static_cast<double>(b.T);
  const double cd = student_cd(b.d);
  const double min_T = 12.0 * dd * std::pow(b.tau0, 4) / (cd * cd * std::pow(b.R, 4));
  if (TT < min_T) throw std::domain_error("bound_student: T below 12 d tau0^4 / (c_d^2 R^4)");
  const double max_norm = b.max_obs_norm.value_or(b.R);
  const double C1 = std::pow(2.0 * b.R + max_norm, 2);
  const double rt = std::sqrt(TT);
  const double log_term =
      std::log(1.0 + 1.0 / (cd * std::pow(TT, 0.25)) +
               b.center_norm_sum / (std::sqrt(6.0) * kk * b.tau0));
  return (3.0 + dd) * kk * rt * log_term + kk * dd / 4.0 * rt * std::log(TT) +
         (std::sqrt(3.0 * kk * kk * dd + 12.0 * b.tau0 * b.tau0 / (cd * cd)) + b.eta * kk) * rt +
         (std::log(static_cast<double>(b.p)) + (b.adaptive ? C1 * C1 : C1 * C1 / 2.0)) * rt;
}

double kl_bound_student(std::size_t k, std::size_t d, const Centers& centers, double tau,
                        const std::vector<double>& xi, double tau0, double R, double eta,
                        std::size_t p) {
  if (k < 1 || d < 1 || p < 1 || k > p) throw std::invalid_argument("kl_bound_student: bad sizes");
  if (centers.k() != k || centers.dim() != d || xi.size() != k)
    throw std::invalid_argument("kl_bound_student: centers/xi do not match k and d");
  if (!(tau > 0.0) || !(tau0 > 0.0) || !(R > 0.0) || eta < 0.0)
    throw std::domain_error("kl_bound_student: parameters out of range");
  const double dd = static_cast<double>(d), kk = static_cast<double>(k);
  if (tau * tau > std::sqrt(3.0) * R * R / (6.0 * std::sqrt(dd)))
    throw std::domain_error("kl_bound_student: tau^2 above sqrt(3) R^2 / (6 sqrt(d))");
  double norm_sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double nj = std::sqrt(squared_norm(centers[j]));
    if (nj > R) throw std::domain_error("kl_bound_student: center outside B(R)");
    norm_sum += nj;
  }
  double total = 0.0;
  for (double x : xi) {
    if (!(x > 0.0) || x > R) throw std::domain_error("kl_bound_student: xi outside (0, R]");
    total += 0.5 * (3.0 + dd) * std::log1p(x * x / (6.0 * tau * tau)) - 0.5 * dd * std::log(x * x);
  }
  total -= kk * std::log(student_kl_constant(d));
  total += (3.0 + dd) * kk *
           std::log(1.0 + tau / tau0 + norm_sum / (std::sqrt(6.0) * kk * tau0));
  total += kk * dd * std::log(tau0);
  total += std::log(static_cast<double>(p)) + eta * (kk - 1.0);
  return total;
}

std::size_t correct_k_count(const std::vector<std::size_t>& estimated,
                            const std::vector<std::size_t>& truth) {
  if (estimated.size() != truth.size())
    throw std::invalid_argument("correct_k_count: length mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (estimated[i] == truth[i]) ++hits;
  return hits;
}

std::size_t correct_k_count(const RunRecord& record, const std::vector<std::size_t>& truth) {
  std::vector<std::size_t> ks;
  ks.reserve(record.steps.size());
  for (const auto& s : record.steps) ks.push_back(s.k());
  return correct_k_count(ks, truth);
}

std::vector<RegretRow> regret_report(const std::vector<Repetition>& reps, double R,
                                     const RegretOptions& opts) {
  if (reps.empty()) throw std::invalid_argument("regret_report: no repetitions");
  const std::size_t T = reps.front().run.steps.size();
  for (const auto& r : reps)
    if (r.run.steps.size() != T || r.k_true.size() != T || r.data.size() != T)
      throw std::invalid_argument("regret_report: repetitions have different lengths");
  if (T == 0) return {};

  std::set<std::size_t> times;
  if (opts.stride > 0)
    for (std::size_t t = opts.stride; t <= T; t += opts.stride) times.insert(t);
  for (std::size_t t : opts.extra_times)
    if (t >= 1 && t <= T) times.insert(t);
  times.insert(T);

  const std::size_t d = reps.front().data.dim();
  std::vector<RegretRow> rows;
  for (std::size_t t : times) {
    RegretRow row;
    row.t = t;
    row.k_true = reps.front().k_true[t - 1];
    std::map<std::size_t, std::size_t> votes;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& rep = reps[i];
      row.ecl += rep.run.steps[t - 1].cumulative_loss;
      Rng rng = seeded_rng(opts.seed, i);
      row.ocl += ocl(rep.data, t, rep.k_true[t - 1], R, opts.ocl_kmeans, rng).value;
      ++votes[rep.run.steps[t - 1].k()];
    }
    const double n = static_cast<double>(reps.size());
    row.ecl /= n;
    row.ocl /= n;
    row.regret = row.ecl - row.ocl;
    row.bound_cor3 = bound_corollary3(row.k_true, t, d, R, opts.eta, opts.p);
    std::size_t best_votes = 0;
    for (const auto& [k, v] : votes)
      if (v > best_votes) {
        best_votes = v;
        row.k_mode = k;
      }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pacbo
