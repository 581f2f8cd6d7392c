#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pacbo/quasi_posterior.hpp"

using namespace pacbo;

namespace {

PriorSpec uniform_spec(std::size_t p, std::size_t d, double R, double eta) {
  PriorSpec s;
  s.p = p;
  s.d = d;
  s.R = R;
  s.eta = eta;
  return s;
}

struct Toy {
  Dataset data{1, {{-1.2}, {0.1}, {1.3}}};
  std::vector<double> losses = {1.0, 0.5, 0.8};
  std::vector<double> lambdas = {1.0, 0.8, 0.6};
  ScoreContext ctx() const { return {&data, losses, lambdas}; }
};

}  // namespace

TEST_CASE("at t = 0 the target is the prior") {
  const Prior prior(uniform_spec(3, 2, 1.0, 0.2));
  Dataset none(2);
  const TargetDensity tgt{&prior, ScoreContext{&none, {}, {}}, 1.3};
  const Centers c(2, {{0.3, -0.4}, {1.0, 0.2}});
  CHECK(log_target(c, tgt) == prior.log_density(c));
}

TEST_CASE("target outside the support is -inf") {
  Toy toy;
  const Prior prior(uniform_spec(3, 1, 1.0, 0.0));
  const TargetDensity tgt{&prior, toy.ctx(), 1.0};
  CHECK(log_target(Centers(1, {{0.0}, {2.5}}), tgt) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("small lambda recovers the prior") {
  Toy toy;
  const Prior prior(uniform_spec(3, 1, 1.0, 0.0));
  const Centers c(1, {{0.2}, {-1.0}});
  double last = std::numeric_limits<double>::infinity();
  for (double lam : {1.0, 1e-2, 1e-4, 1e-8}) {
    const TargetDensity tgt{&prior, toy.ctx(), lam};
    const double gap = std::abs(log_target(c, tgt) - prior.log_density(c));
    CHECK(gap < last);
    last = gap;
  }
  CHECK(last < 1e-6);
  const TargetDensity zero{&prior, toy.ctx(), 0.0};
  CHECK(log_target(c, zero) == prior.log_density(c));
}

TEST_CASE("target differences are score differences plus the prior ratio") {
  Toy toy;
  const Prior prior(uniform_spec(3, 1, 1.0, 0.4));
  const TargetDensity tgt{&prior, toy.ctx(), 0.9};
  oracle::PointList xs = {{-1.2}, {0.1}, {1.3}};
  const Centers a(1, {{0.2}, {-1.0}}), b(1, {{1.1}});
  const double sa = oracle::batch_score({{0.2}, {-1.0}}, xs, toy.losses, toy.lambdas);
  const double sb = oracle::batch_score({{1.1}}, xs, toy.losses, toy.lambdas);
  const double expected = -0.9 * (sa - sb) + prior.log_density(a) - prior.log_density(b);
  CHECK(log_target(a, tgt) - log_target(b, tgt) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("grid oracle prior marginals") {
  Dataset none(1);
  {
    const Prior prior(uniform_spec(2, 1, 1.0, 0.0));
    const auto res = grid_oracle(TargetDensity{&prior, ScoreContext{&none, {}, {}}, 1.0}, GridSpec{});
    CHECK(res.k_marginal[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(res.k_marginal[1] == doctest::Approx(0.5).epsilon(1e-9));
  }
  {
    const Prior prior(uniform_spec(2, 1, 1.0, std::log(2.0)));
    const auto res = grid_oracle(TargetDensity{&prior, ScoreContext{&none, {}, {}}, 1.0}, GridSpec{});
    CHECK(res.k_marginal[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(res.k_marginal[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("grid oracle converges under refinement and sums to one") {
  Toy toy;
  const Prior prior(uniform_spec(3, 1, 1.0, 0.0));
  const TargetDensity tgt{&prior, toy.ctx(), 1.0};
  GridSpec coarse, fine;
  coarse.cells_per_axis = 100;
  fine.cells_per_axis = 200;
  const auto a = grid_oracle(tgt, coarse);
  const auto b = grid_oracle(tgt, fine);
  double total = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    total += b.k_marginal[k];
    CHECK(std::abs(std::exp(a.slice_log_mass[k] - b.slice_log_mass[k]) - 1.0) < 1e-3);
    CHECK(std::abs(a.k_marginal[k] - b.k_marginal[k]) < 1e-3);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("grid oracle normalized density matches the cell probabilities") {
  Toy toy;
  const Prior prior(uniform_spec(2, 1, 1.0, 0.0));
  const TargetDensity tgt{&prior, toy.ctx(), 1.0};
  GridSpec g;
  g.cells_per_axis = 50;
  g.keep_cells = true;
  const auto res = grid_oracle(tgt, g);
  const double h = 2.0 * res.half_width / 50.0;
  // First cell of the k = 1 slice has midpoint -2R + h/2.
  const Centers c(1, {{-res.half_width + 0.5 * h}});
  CHECK(std::exp(res.log_density(c, tgt)) * h == doctest::Approx(res.cells[0][0]).epsilon(1e-10));
}

TEST_CASE("grid oracle limits") {
  Dataset none(3);
  const Prior p3(uniform_spec(2, 3, 1.0, 0.0));
  CHECK_THROWS(grid_oracle(TargetDensity{&p3, ScoreContext{&none, {}, {}}, 1.0}, GridSpec{}));
  Dataset none1(1);
  const Prior p4(uniform_spec(4, 1, 1.0, 0.0));
  CHECK_THROWS(grid_oracle(TargetDensity{&p4, ScoreContext{&none1, {}, {}}, 1.0}, GridSpec{}));
  const Prior p2d(uniform_spec(2, 2, 1.0, 0.0));
  Dataset none2(2);
  CHECK_THROWS(grid_oracle(TargetDensity{&p2d, ScoreContext{&none2, {}, {}}, 1.0}, GridSpec{}));
}
