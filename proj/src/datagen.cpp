#include "pacbo/datagen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pacbo {

std::array<double, 2> paper_model_centers(std::size_t t) {
  if (t < 1) throw std::out_of_range("paper_model_centers: t must be >= 1");
  const double bucket = static_cast<double>((t - 1) / 20);
  const double c1 = -2.5 * std::numbers::pi + (5.0 * std::numbers::pi / 9.0) * (bucket - 1.0);
  return {c1, 5.0 * std::sin(c1)};
}

std::size_t paper_model_k_true(std::size_t t) {
  if (t < 1) throw std::out_of_range("paper_model_k_true: t must be >= 1");
  return std::min<std::size_t>((t + 19) / 20, 10);
}

namespace {

GeneratedStream generate_paper(const PaperTenGroups& spec, Rng& rng) {
  if (spec.T < 1) throw std::invalid_argument("generate: T must be >= 1");
  GeneratedStream out{Dataset(2), {}};
  for (std::size_t t = 1; t <= spec.T; ++t) {
    const auto c = paper_model_centers(t);
    std::array<double, 2> x{};
    if (t <= 100) {
      for (int i = 0; i < 2; ++i) x[i] = c[i] + rng.uniform() - 0.5;
    } else {
      for (int i = 0; i < 2; ++i) x[i] = c[i] + rng.normal();
    }
    out.data.push_back(x);
    out.k_true.push_back(paper_model_k_true(t));
  }
  return out;
}

// Lower Cholesky factor of a small symmetric positive definite matrix.
std::vector<double> cholesky(const std::vector<double>& a, std::size_t d) {
  std::vector<double> l(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * d + j];
      for (std::size_t q = 0; q < j; ++q) s -= l[i * d + q] * l[j * d + q];
      if (i == j) {
        if (s <= 0.0) throw std::invalid_argument("generate: covariance is not positive definite");
        l[i * d + i] = std::sqrt(s);
      } else {
        l[i * d + j] = s / l[j * d + j];
      }
    }
  }
  return l;
}

GeneratedStream generate_mixture(const GaussianMixture& spec, Rng& rng) {
  const std::size_t m = spec.means.size();
  if (m == 0 || spec.covariances.size() != m || spec.weights.size() != m)
    throw std::invalid_argument("generate: mixture components are inconsistent");
  if (spec.T < 1) throw std::invalid_argument("generate: T must be >= 1");
  const std::size_t d = spec.means.front().size();
  double wsum = 0.0;
  std::size_t active = 0;
  for (double w : spec.weights) {
    if (w < 0.0) throw std::invalid_argument("generate: negative weight");
    wsum += w;
    if (w > 0.0) ++active;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("generate: weights must sum to 1");
  std::vector<std::vector<double>> chol;
  for (std::size_t i = 0; i < m; ++i) {
    if (spec.means[i].size() != d || spec.covariances[i].size() != d * d)
      throw std::invalid_argument("generate: component has the wrong dimension");
    chol.push_back(cholesky(spec.covariances[i], d));
  }
  GeneratedStream out{Dataset(d), {}};
  std::vector<double> z(d), x(d);
  for (std::size_t t = 0; t < spec.T; ++t) {
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t comp = m - 1;
    for (std::size_t i = 0; i < m; ++i) {
      cum += spec.weights[i];
      if (u < cum) {
        comp = i;
        break;
      }
    }
    for (auto& v : z) v = rng.normal();
    for (std::size_t i = 0; i < d; ++i) {
      double acc = spec.means[comp][i];
      for (std::size_t q = 0; q <= i; ++q) acc += chol[comp][i * d + q] * z[q];
      x[i] = acc;
    }
    out.data.push_back(x);
    out.k_true.push_back(active);
  }
  return out;
}

}  // namespace

GeneratedStream generate(const SyntheticSpec& spec, Rng& rng) {
  if (const auto* p = std::get_if<PaperTenGroups>(&spec)) return generate_paper(*p, rng);
  if (const auto* g = std::get_if<GaussianMixture>(&spec)) return generate_mixture(*g, rng);
  const auto& f = std::get<FixedPoints>(spec);
  if (!f.k_true.empty() && f.k_true.size() != f.points.size())
    throw std::invalid_argument("generate: k_true length does not match the points");
  return {f.points, f.k_true};
}

}  // namespace pacbo
