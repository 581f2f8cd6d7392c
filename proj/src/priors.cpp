#include "pacbo/priors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pacbo/student_t.hpp"

namespace pacbo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_q(std::size_t p, double eta) {
  // sum_{i=1}^p exp(-eta i) = exp(-eta) sum_{i=0}^{p-1} exp(-eta i), all terms <= 1.
  double acc = 0.0;
  for (std::size_t i = 0; i < p; ++i) acc += std::exp(-eta * static_cast<double>(i));
  return -eta + std::log(acc);
}

double log_uniform_center(std::size_t d, double R) {
  const double dd = static_cast<double>(d);
  return std::lgamma(dd / 2.0 + 1.0) - 0.5 * dd * std::log(std::numbers::pi) -
         dd * std::log(2.0 * R);
}

double log_student_center_norm(std::size_t d, double tau0, const TruncationMass& trunc) {
  return student3::log_norm(d, std::numbers::sqrt2 * tau0) - std::log(trunc.mass);
}

}  // namespace

double log_q(std::size_t k, std::size_t p, double eta) {
  if (p == 0) throw std::invalid_argument("log_q: p must be >= 1");
  if (k < 1 || k > p) throw std::out_of_range("log_q: k outside [1, p]");
  if (eta < 0.0) throw std::invalid_argument("log_q: eta must be >= 0");
  return -eta * static_cast<double>(k) - log_sum_q(p, eta);
}

double log_prior_uniform(const Centers& c, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("log_prior_uniform: R must be > 0");
  const double limit = 4.0 * R * R;
  for (std::size_t j = 0; j < c.k(); ++j)
    if (squared_norm(c[j]) > limit) return kNegInf;
  return static_cast<double>(c.k()) * log_uniform_center(c.dim(), R);
}

TruncationMass student_truncation_exact(std::size_t d, double R, double tau0) {
  TruncationMass out;
  out.mass = student3::radial_cdf(d, 2.0 * R / (std::numbers::sqrt2 * tau0));
  return out;
}

TruncationMass student_truncation_mc(std::size_t d, double R, double tau0,
                                     std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("student_truncation_mc: no samples");
  Rng rng(seed, 0);
  std::vector<double> zero(d, 0.0), draw(d);
  const double limit = 4.0 * R * R;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    student3::sample(draw, zero, tau0, rng);
    if (squared_norm(draw) <= limit) ++hits;
  }
  TruncationMass out;
  out.mass = static_cast<double>(hits) / static_cast<double>(samples);
  out.stderr_ = std::sqrt(out.mass * (1.0 - out.mass) / static_cast<double>(samples));
  out.method = "monte-carlo";
  out.samples = samples;
  out.seed = seed;
  return out;
}

double log_prior_student(const Centers& c, double R, double tau0, const TruncationMass& trunc) {
  if (!(tau0 > 0.0)) throw std::invalid_argument("log_prior_student: tau0 must be > 0");
  if (!(R > 0.0)) throw std::invalid_argument("log_prior_student: R must be > 0");
  const double limit = 4.0 * R * R;
  const double dd = static_cast<double>(c.dim());
  const double base = log_student_center_norm(c.dim(), tau0, trunc);
  double total = 0.0;
  for (std::size_t j = 0; j < c.k(); ++j) {
    const double r2 = squared_norm(c[j]);
    if (r2 > limit) return kNegInf;
    total += base - 0.5 * (3.0 + dd) * std::log1p(r2 / (6.0 * tau0 * tau0));
  }
  return total;
}

PriorSpec PriorSpec::from_config(const PacboConfig& cfg) {
  PriorSpec s;
  s.kind = cfg.prior;
  s.p = cfg.p;
  s.d = cfg.d;
  s.R = cfg.R;
  s.eta = cfg.eta;
  s.tau0 = cfg.tau0;
  return s;
}

Prior::Prior(PriorSpec spec)
    : Prior(spec, spec.kind == PriorKind::TruncatedStudent
                      ? student_truncation_exact(spec.d, spec.R, spec.tau0)
                      : TruncationMass{}) {}

Prior::Prior(PriorSpec spec, TruncationMass trunc) : spec_(spec), trunc_(std::move(trunc)) {
  if (spec_.p == 0) throw std::invalid_argument("Prior: p must be >= 1");
  if (spec_.d == 0) throw std::invalid_argument("Prior: d must be >= 1");
  if (!(spec_.R > 0.0)) throw std::invalid_argument("Prior: R must be > 0");
  if (!(spec_.eta >= 0.0)) throw std::invalid_argument("Prior: eta must be >= 0");
  log_norm_const_ = log_sum_q(spec_.p, spec_.eta);
  if (spec_.kind == PriorKind::UniformBall) {
    if (!std::isfinite(spec_.R))
      throw std::invalid_argument("Prior: uniform-ball prior needs a finite R");
    log_center_const_ = log_uniform_center(spec_.d, spec_.R);
  } else {
    if (!(spec_.tau0 > 0.0)) throw std::invalid_argument("Prior: tau0 must be > 0");
    if (!(trunc_.mass > 0.0)) throw std::invalid_argument("Prior: zero truncation mass");
    log_center_const_ = log_student_center_norm(spec_.d, spec_.tau0, trunc_);
  }
}

double Prior::log_q(std::size_t k) const {
  if (k < 1 || k > spec_.p) throw std::out_of_range("Prior::log_q: k outside [1, p]");
  return -spec_.eta * static_cast<double>(k) - log_norm_const_;
}

void Prior::check(const Centers& c) const {
  if (c.dim() != spec_.d) throw std::invalid_argument("Prior: dimension mismatch");
  if (c.k() == 0 || c.k() > spec_.p) throw std::out_of_range("Prior: number of centers outside [1, p]");
}

bool Prior::in_support(const Centers& c) const {
  if (std::isinf(spec_.R)) return true;
  const double limit = 4.0 * spec_.R * spec_.R;
  for (std::size_t j = 0; j < c.k(); ++j)
    if (squared_norm(c[j]) > limit) return false;
  return true;
}

double Prior::log_slice_density(const Centers& c) const {
  check(c);
  if (!in_support(c)) return kNegInf;
  const double k = static_cast<double>(c.k());
  if (spec_.kind == PriorKind::UniformBall) return k * log_center_const_;
  const double dd = static_cast<double>(spec_.d);
  const double inv = 1.0 / (6.0 * spec_.tau0 * spec_.tau0);
  double total = k * log_center_const_;
  for (std::size_t j = 0; j < c.k(); ++j)
    total -= 0.5 * (3.0 + dd) * std::log1p(squared_norm(c[j]) * inv);
  return total;
}

double Prior::log_density(const Centers& c) const {
  const double slice = log_slice_density(c);
  if (slice == kNegInf) return kNegInf;
  return log_q(c.k()) + slice;
}

Centers Prior::sample_slice(std::size_t k, Rng& rng) const {
  if (k < 1 || k > spec_.p) throw std::out_of_range("Prior::sample_slice: k outside [1, p]");
  const std::size_t d = spec_.d;
  Centers out(d, std::vector<double>(k * d));
  std::vector<double> zero(d, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    auto row = out[j];
    if (spec_.kind == PriorKind::UniformBall) {
      // Uniform direction times radius 2R U^{1/d}.
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (auto& v : row) {
          v = rng.normal();
          n2 += v * v;
        }
      } while (n2 == 0.0);
      const double radius =
          2.0 * spec_.R * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
      const double scale = radius / std::sqrt(n2);
      for (auto& v : row) v *= scale;
    } else {
      const double limit = 4.0 * spec_.R * spec_.R;
      do {
        student3::sample(row, zero, spec_.tau0, rng);
      } while (squared_norm(row) > limit);
    }
  }
  return out;
}

Centers Prior::sample(Rng& rng) const {
  // Inverse CDF on q.
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t k = spec_.p;
  for (std::size_t i = 1; i <= spec_.p; ++i) {
    cum += std::exp(log_q(i));
    if (u < cum) {
      k = i;
      break;
    }
  }
  return sample_slice(k, rng);
}

}  // namespace pacbo
