#include "pacbo/student_t.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "pacbo/types.hpp"

namespace pacbo::student3 {

double log_norm(std::size_t d, double sigma) {
  const double dd = static_cast<double>(d);
  return std::lgamma((kDof + dd) / 2.0) - std::lgamma(kDof / 2.0) -
         0.5 * dd * std::log(kDof * std::numbers::pi) - dd * std::log(sigma);
}

double log_density(std::span<const double> x, std::span<const double> m, double tau) {
  const std::size_t d = x.size();
  const double sigma = std::numbers::sqrt2 * tau;
  const double r2 = squared_distance(x, m);
  return log_norm(d, sigma) -
         0.5 * (kDof + static_cast<double>(d)) * std::log1p(r2 / (6.0 * tau * tau));
}

double radial_cdf(std::size_t d, double r) {
  if (r <= 0.0) return 0.0;
  if (std::isinf(r)) return 1.0;
  const double r2 = r * r;
  return boost::math::ibeta(0.5 * static_cast<double>(d), 0.5 * kDof, r2 / (r2 + kDof));
}

void sample(std::span<double> out, std::span<const double> m, double tau, Rng& rng) {
  const double w = rng.chi_squared(3);
  const double scale = std::numbers::sqrt2 * tau / std::sqrt(w / kDof);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] + scale * rng.normal();
}

}  // namespace pacbo::student3
