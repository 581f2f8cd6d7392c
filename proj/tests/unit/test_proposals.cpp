#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pacbo/kmeans.hpp"
#include "pacbo/proposals.hpp"

using namespace pacbo;

namespace {

std::vector<double> draws_1d(double tau, std::size_t n, std::uint64_t seed) {
  Rng rng = seeded_rng(seed, 0);
  const ProposalParams params{Centers(1, {{0.0}}), tau};
  std::vector<double> out(n);
  for (auto& v : out) v = student_sample(params, rng)[0][0];
  return out;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  return v[static_cast<std::size_t>(q * static_cast<double>(v.size() - 1))];
}

}  // namespace

TEST_CASE("Student proposal density examples") {
  const ProposalParams unit{Centers(1, {{0.0}}), 1.0};
  const double mode = student_log_density(Centers(1, {{0.0}}), unit);
  CHECK(mode == doctest::Approx(std::log(2.0 / (std::numbers::pi * std::sqrt(6.0)))).epsilon(1e-14));
  CHECK(std::exp(mode) == doctest::Approx(0.259899).epsilon(1e-6));
  for (double x : {0.3, 1.0, 4.5})
    CHECK(std::exp(student_log_density(Centers(1, {{x}}), unit)) ==
          doctest::Approx(oracle::student3_pdf_1d(x, std::sqrt(2.0))).epsilon(1e-12));

  const ProposalParams p2{Centers(2, {{1.0, -2.0}, {0.5, 0.5}}), 0.3};
  const Centers plus(2, {{1.2, -1.9}, {0.1, 0.9}}), minus(2, {{0.8, -2.1}, {0.9, 0.1}});
  CHECK(student_log_density(plus, p2) == doctest::Approx(student_log_density(minus, p2)).epsilon(1e-14));
  CHECK_THROWS(student_log_density(Centers(2, {{0, 0}}), p2));
}

TEST_CASE("Student proposal density integrates to one") {
  for (double tau : {0.1, 1.0, 3.0}) {
    const ProposalParams params{Centers(1, {{0.7}}), tau};
    const double mass = oracle::integrate(
        [&](double x) { return std::exp(student_log_density(Centers(1, {{x}}), params)); },
        -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
  }

  // d = 2: importance sampling from a bivariate Cauchy, whose heavier tails
  // keep the weights bounded.
  const double tau = 0.5, s = 1.0;
  const ProposalParams params{Centers(2, {{0.3, -0.2}}), tau};
  std::mt19937_64 gen(99);
  std::normal_distribution<double> g;
  std::chi_squared_distribution<double> chi1(1.0);
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = std::sqrt(chi1(gen));
    const double u = s * g(gen) / w, v = s * g(gen) / w;
    const double cauchy = 1.0 / (2.0 * std::numbers::pi * s * s) *
                          std::pow(1.0 + (u * u + v * v) / (s * s), -1.5);
    sum += std::exp(student_log_density(Centers(2, {{0.3 + u, -0.2 + v}}), params)) / cauchy;
  }
  CHECK(sum / n == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("Student proposal sampling moments and CDF") {
  const auto x = draws_1d(1.0, 100000, 4);
  double mean = 0.0;
  for (double v : x) mean += v / static_cast<double>(x.size());
  CHECK(std::abs(mean) < 0.02);

  for (double q : {0.5, 1.0, 2.0}) {
    const double emp = static_cast<double>(std::count_if(x.begin(), x.end(),
                                                         [&](double v) { return std::abs(v) <= q; })) /
                       static_cast<double>(x.size());
    const double exact = oracle::integrate(
        [](double t) { return oracle::student3_pdf_1d(t, std::sqrt(2.0)); }, -q, q);
    CHECK(std::abs(emp - exact) < 0.01);
  }

  // Kolmogorov-Smirnov distance to the analytic CDF.
  auto sorted = x;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double F = oracle::student3_cdf_1d(sorted[i], std::sqrt(2.0));
    ks = std::max({ks, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
  }
  CHECK(ks <= 0.01);
}

TEST_CASE("Student proposal is a scale family") {
  const auto a = draws_1d(1.0, 100000, 8);
  const auto b = draws_1d(0.1, 100000, 8);
  const double iqr_a = quantile(a, 0.75) - quantile(a, 0.25);
  const double iqr_b = quantile(b, 0.75) - quantile(b, 0.25);
  CHECK(iqr_b / iqr_a == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("tau schedule") {
  CHECK(tau_schedule(20, 5) == 0.1);
  CHECK(tau_schedule(1, 1) == 1.0);
  CHECK(tau_schedule(4, 4) == 0.25);
  CHECK(tau_schedule(7, 0) == tau_schedule(7, 1));
}

TEST_CASE("k-means basic fits") {
  KMeansOptions opts;
  Rng rng = seeded_rng(1, 0);
  const Dataset data(2, {{0, 0}, {2, 0}, {4, 3}, {1, 1}});
  const auto one = kmeans_fit(data, 4, 1, opts, rng);
  CHECK(one.centers[0][0] == doctest::Approx(1.75));
  CHECK(one.centers[0][1] == doctest::Approx(1.0));

  const auto four = kmeans_fit(data, 4, 4, opts, rng);
  CHECK(four.centers.k() == 4);
  CHECK(four.loss == doctest::Approx(0.0));

  Dataset pm(1);
  for (int i = 0; i < 10; ++i) {
    pm.push_back(std::vector<double>{-1.0});
    pm.push_back(std::vector<double>{1.0});
  }
  auto two = kmeans_fit(pm, pm.size(), 2, opts, rng);
  std::vector<double> got = {two.centers[0][0], two.centers[1][0]};
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(-1.0));
  CHECK(got[1] == doctest::Approx(1.0));
  CHECK(two.loss == doctest::Approx(0.0));
}

TEST_CASE("k-means with more centers than points pads with jitter") {
  KMeansOptions opts;
  opts.jitter = 1e-6;
  Rng rng = seeded_rng(2, 0);
  const Dataset one(2, {{0.5, -0.5}});
  const auto fit = kmeans_fit(one, 1, 3, opts, rng);
  REQUIRE(fit.centers.k() == 3);
  CHECK(fit.loss == 0.0);
  for (std::size_t j = 0; j < 3; ++j) CHECK(squared_distance(fit.centers[j], one[0]) < 1e-10);
  CHECK(fit.centers.all_finite());
}

TEST_CASE("k-means cache loss is non-increasing in k and order independent") {
  Rng rng = seeded_rng(9, 0);
  Dataset data(2);
  for (int i = 0; i < 80; ++i) data.push_back(std::vector<double>{3 * rng.normal(), rng.normal()});
  KMeansCache forward(data, data.size(), KMeansOptions{}, seeded_rng(5, 0));
  KMeansCache backward(data, data.size(), KMeansOptions{}, seeded_rng(5, 0));
  for (std::size_t k = 8; k >= 1; --k) backward.get(k);
  double last = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= 8; ++k) {
    const auto& f = forward.get(k);
    CHECK(f.centers.k() == k);
    CHECK(f.centers.all_finite());
    CHECK(f.loss <= last + 1e-12);
    CHECK(f.loss == doctest::Approx(within_cluster_loss(f.centers, data, data.size())).epsilon(1e-12));
    CHECK(f.centers == backward.get(k).centers);
    last = f.loss;
  }
}
