#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pacbo/datagen.hpp"

using namespace pacbo;

TEST_CASE("ten-group model centers") {
  const auto c1 = paper_model_centers(1);
  CHECK(c1[0] == doctest::Approx(-55.0 * std::numbers::pi / 18.0).epsilon(1e-14));
  CHECK(c1[1] == doctest::Approx(5.0 * std::sin(-55.0 * std::numbers::pi / 18.0)).epsilon(1e-14));
  CHECK(paper_model_centers(21)[0] - paper_model_centers(20)[0] ==
        doctest::Approx(5.0 * std::numbers::pi / 9.0).epsilon(1e-14));
  CHECK(paper_model_centers(40) == paper_model_centers(21));
  CHECK_THROWS(paper_model_centers(0));
}

TEST_CASE("ten-group model true k") {
  CHECK(paper_model_k_true(1) == 1);
  CHECK(paper_model_k_true(20) == 1);
  CHECK(paper_model_k_true(21) == 2);
  CHECK(paper_model_k_true(200) == 10);
  CHECK(paper_model_k_true(250) == 10);
}

TEST_CASE("ten-group stream: unit squares, then Gaussians") {
  Rng rng = seeded_rng(1, 0);
  const GeneratedStream s = generate(PaperTenGroups{200}, rng);
  REQUIRE(s.data.size() == 200);
  REQUIRE(s.k_true.size() == 200);
  for (std::size_t t = 1; t <= 100; ++t) {
    const auto c = paper_model_centers(t);
    CHECK(std::abs(s.data[t - 1][0] - c[0]) <= 0.5);
    CHECK(std::abs(s.data[t - 1][1] - c[1]) <= 0.5);
  }
  for (std::size_t t = 1; t <= 200; ++t) CHECK(s.k_true[t - 1] == paper_model_k_true(t));

  Rng again = seeded_rng(1, 0);
  CHECK(generate(PaperTenGroups{200}, again).data == s.data);
}

TEST_CASE("Gaussian phase sample mean") {
  const auto c = paper_model_centers(150);
  GaussianMixture g;
  g.means = {{c[0], c[1]}};
  g.covariances = {{1, 0, 0, 1}};
  g.weights = {1.0};
  g.T = 10000;
  Rng rng = seeded_rng(2, 0);
  const GeneratedStream s = generate(g, rng);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < s.data.size(); ++i) {
    mx += s.data[i][0] / 1e4;
    my += s.data[i][1] / 1e4;
  }
  CHECK(std::abs(mx - c[0]) < 0.05);
  CHECK(std::abs(my - c[1]) < 0.05);
}

TEST_CASE("mixture covariance and validation") {
  GaussianMixture g;
  g.means = {{0, 0}};
  g.covariances = {{4, 1.5, 1.5, 1}};
  g.weights = {1.0};
  g.T = 100000;
  Rng rng = seeded_rng(3, 0);
  const GeneratedStream s = generate(g, rng);
  double sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(s.data.size());
  for (std::size_t i = 0; i < s.data.size(); ++i) {
    sxx += s.data[i][0] * s.data[i][0] / n;
    sxy += s.data[i][0] * s.data[i][1] / n;
    syy += s.data[i][1] * s.data[i][1] / n;
  }
  CHECK(sxx == doctest::Approx(4.0).epsilon(0.03));
  CHECK(sxy == doctest::Approx(1.5).epsilon(0.03));
  CHECK(syy == doctest::Approx(1.0).epsilon(0.03));

  GaussianMixture bad = g;
  bad.weights = {0.7};
  CHECK_THROWS(generate(bad, rng));
  bad = g;
  bad.covariances = {{1, 2, 2, 1}};
  CHECK_THROWS(generate(bad, rng));
}

TEST_CASE("fixed points pass through unchanged") {
  FixedPoints f;
  f.points = Dataset(1, {{3.0}, {-1.0}, {2.5}});
  f.k_true = {1, 2, 2};
  Rng rng = seeded_rng(4, 0);
  const GeneratedStream s = generate(f, rng);
  CHECK(s.data == f.points);
  CHECK(s.k_true == f.k_true);
}

TEST_CASE("ten-group stream stays inside B(15) almost always") {
  std::size_t inside = 0, total = 0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    Rng rng = seeded_rng(100 + r, 0);
    const GeneratedStream s = generate(PaperTenGroups{200}, rng);
    for (std::size_t i = 0; i < s.data.size(); ++i, ++total)
      if (squared_norm(s.data[i]) <= 225.0) ++inside;
  }
  CHECK(static_cast<double>(inside) / static_cast<double>(total) >= 0.999);
}
