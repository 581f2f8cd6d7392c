// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pacbo/commands.hpp"
#include "pacbo/loss_score.hpp"
#include "pacbo/metrics_bounds.hpp"
#include "pacbo/online.hpp"
#include "pacbo/proposals.hpp"
#include "pacbo/rjmcmc.hpp"

using namespace pacbo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& fn) {
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

cli::Table1Result table1;

Outcome table1_replication() {
  cli::Table1Args args;
  args.reps = 20;
  table1 = cli::cmd_replicate_table1(args);
  const bool ok = table1.mean >= 100.0 && table1.mean <= 140.0;
  return {ok, fmt("mean correct-k %.2f, sd %.2f over 20 reps; accept [100, 140]", table1.mean,
                  table1.sd.value_or(0.0))};
}

Outcome regret_wiring() {
  if (table1.regret.empty()) return {false, "no regret rows (criterion 1 did not run)"};
  auto row_at = [](std::size_t t) -> const RegretRow& {
    for (const auto& r : table1.regret)
      if (r.t == t) return r;
    throw std::runtime_error("missing regret row");
  };
  const RegretRow& last = row_at(200);
  const double bound = bound_corollary3(10, 200, 2, 15.0, 0.0, 20);
  const bool positive = std::isfinite(last.regret) && last.regret > 0.0;
  const bool below = last.regret <= bound;
  std::vector<double> ratio;
  for (std::size_t t : {50u, 100u, 200u}) {
    const double T = static_cast<double>(t);
    ratio.push_back(row_at(t).regret / (std::sqrt(T) * std::log(T)));
  }
  const bool scaling = ratio[1] <= 1.25 * ratio[0] && ratio[2] <= 1.25 * ratio[1];
  return {positive && below && scaling,
          fmt("ECL-OCL(200) = %.1f, bound %.4g; ratio at T=50,100,200: %.3f %.3f", last.regret,
              bound, ratio[0], ratio[1]) +
              fmt(" %.3f (allowed growth 25%%)", ratio[2])};
}

Outcome sampler_vs_oracle() {
  const cli::OracleReport toy = cli::cmd_oracle_check(cli::ToySpec{}, 0.05);
  const cli::OracleReport prior = cli::cmd_oracle_check(cli::prior_only_toy(2), 0.02);
  double dev = 0.0;
  for (double v : prior.chain_marginal) dev = std::max(dev, std::abs(v - 0.5));
  return {toy.tv <= 0.05 && dev <= 0.02,
          fmt("toy TV %.4f (<= 0.05); prior-only max |f_k - 1/2| %.4f (<= 0.02)", toy.tv, dev)};
}

Outcome detailed_balance() {
  Rng gen = seeded_rng(404, 0);
  const Dataset data = generate(PaperTenGroups{30}, gen).data;
  StreamHistory hist(2);
  hist.set_initial_lambda(1.2);
  for (std::size_t t = 0; t < 30; ++t)
    hist.append(data[t], 1.0 + gen.uniform(), 1.2 / std::sqrt(static_cast<double>(t + 1)));
  PriorSpec ps;
  ps.p = 5;
  ps.d = 2;
  ps.R = 15.0;
  ps.eta = 0.2;
  const Prior prior(ps);
  const TargetDensity tgt{&prior, hist.context(), 0.2};
  KMeansCache fits(data, 30, KMeansOptions{}, seeded_rng(404, 1));
  const ProposalKernel kernel(fits, 0.5);
  Rng rng = seeded_rng(404, 2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t ka = 1 + rng.uniform_index(5);
    std::size_t kb = propose_dimension(ka, 5, rng);
    const ProposalParams pa = kernel.params(ka), pb = kernel.params(kb);
    const ChainState a = make_state(project_into_support(student_sample(pa, rng), 29.0), tgt);
    const ChainState b = make_state(project_into_support(student_sample(pb, rng), 29.0), tgt);
    const double lhs = a.log_target + log_dimension_proposal(ka, kb, 5) +
                       student_log_density(b.c, pb) +
                       acceptance_log_prob(a, b.c, b.log_target, pa, pb, 5);
    const double rhs = b.log_target + log_dimension_proposal(kb, ka, 5) +
                       student_log_density(a.c, pa) +
                       acceptance_log_prob(b, a.c, a.log_target, pb, pa, 5);
    worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
  }
  return {worst <= 1e-9, fmt("max relative imbalance %.3g over 1000 pairs (<= 1e-9)", worst)};
}

Outcome normalizations() {
  const ProposalParams p1{Centers(1, {{0.3}}), 0.7};
  const double q1 = oracle::integrate(
      [&](double x) { return std::exp(student_log_density(Centers(1, {{x}}), p1)); },
      -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());

  const ProposalParams p2{Centers(2, {{1.0, -0.5}}), 0.4};
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> g;
  std::chi_squared_distribution<double> chi1(1.0);
  const int n = 1'000'000;
  double mc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = std::sqrt(chi1(gen));
    const double u = g(gen) / w, v = g(gen) / w;
    const double cauchy = 1.0 / (2.0 * std::numbers::pi) * std::pow(1.0 + u * u + v * v, -1.5);
    mc += std::exp(student_log_density(Centers(2, {{1.0 + u, -0.5 + v}}), p2)) / cauchy / n;
  }

  PriorSpec ps;
  ps.p = 2;
  ps.d = 1;
  ps.R = 1.0;
  ps.eta = 0.5;
  const Prior prior(ps);
  const double m1 = oracle::integrate(
      [&](double x) { return std::exp(prior.log_density(Centers(1, {{x}}))); }, -2.0, 2.0);
  const double m2 = oracle::integrate(
      [&](double x) {
        return oracle::integrate(
            [&](double y) { return std::exp(prior.log_density(Centers(1, {{x}, {y}}))); }, -2.0, 2.0);
      },
      -2.0, 2.0);
  const double slice_err = std::max(std::abs(m1 - std::exp(log_q(1, 2, 0.5))),
                                    std::abs(m2 - std::exp(log_q(2, 2, 0.5))));
  const bool ok = std::abs(q1 - 1.0) <= 1e-4 && std::abs(mc - 1.0) <= 1e-2 && slice_err <= 1e-8;
  return {ok, fmt("student d=1 %.8f, d=2 MC %.4f, uniform slice mass error %.2g", q1, mc, slice_err)};
}

Outcome kl_dominance() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int ok = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int cfg = 0; cfg < 10; ++cfg) {
    const std::size_t d = 1 + cfg % 2;
    const std::size_t k = 1 + static_cast<std::size_t>(U(gen) * 2.0);
    const double R = 0.5 + 2.0 * U(gen);
    const double tau_max = std::sqrt(std::sqrt(3.0) * R * R / (6.0 * std::sqrt(static_cast<double>(d))));
    const double tau = tau_max * (0.05 + 0.95 * U(gen));
    const double tau0 = 0.3 + 2.0 * U(gen);
    const double eta = U(gen);
    const std::size_t p = k + static_cast<std::size_t>(U(gen) * 4.0);
    oracle::PointList centers;
    Centers c(d);
    std::vector<double> xi;
    for (std::size_t j = 0; j < k; ++j) {
      oracle::Point m(d);
      double norm = 0.0;
      for (auto& v : m) {
        v = 2.0 * U(gen) - 1.0;
        norm += v * v;
      }
      const double scale = R * U(gen) / std::sqrt(norm);
      for (auto& v : m) v *= scale;
      centers.push_back(m);
      c.push_back(m);
      xi.push_back(R * (0.05 + 0.95 * U(gen)));
    }
    const double bound = kl_bound_student(k, d, c, tau, xi, tau0, R, eta, p);
    const oracle::McEstimate kl = oracle::mc_kl_student(centers, tau, xi, tau0, R,
                                                        log_q(k, p, eta), 200000, 100 + cfg);
    const double margin = bound + 3.0 * kl.stderr_ - kl.mean;
    worst_margin = std::min(worst_margin, margin);
    if (margin >= 0.0) ++ok;
  }
  return {ok == 10, fmt("%.0f/10 configs with MC KL <= bound + 3 stderr; smallest margin %.3f",
                        static_cast<double>(ok), worst_margin)};
}

Outcome recursion_consistency() {
  Rng rng = seeded_rng(707, 0);
  double worst = 0.0;
  for (int h = 0; h < 100; ++h) {
    const std::size_t d = 1 + rng.uniform_index(3);
    StreamHistory hist(d);
    hist.set_initial_lambda(1.0);
    Centers c(d);
    const std::size_t k = 1 + rng.uniform_index(5);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> v(d);
      for (auto& x : v) x = 5.0 * rng.normal();
      c.push_back(v);
    }
    ScoreAccumulator acc(c);
    oracle::PointList cl, xs;
    for (std::size_t j = 0; j < k; ++j) cl.emplace_back(c[j].begin(), c[j].end());
    std::vector<double> outs, lams = {1.0};
    for (std::size_t t = 0; t < 20; ++t) {
      std::vector<double> x(d);
      for (auto& v : x) v = 5.0 * rng.normal();
      const double out = 20.0 * rng.uniform();
      const double lam = 1.0 / std::sqrt(static_cast<double>(t + 2));
      acc.extend(x, out, lams.back());
      hist.append(x, out, lam);
      xs.push_back(x);
      outs.push_back(out);
      lams.push_back(lam);
    }
    const double batch = oracle::batch_score(cl, xs, outs, lams);
    worst = std::max(worst, std::abs(acc.value() - batch) / std::abs(batch));
    worst = std::max(worst, std::abs(score(c, hist.context()) - batch) / std::abs(batch));
  }
  return {worst <= 1e-10, fmt("max relative difference %.3g over 100 histories (<= 1e-10)", worst)};
}

Outcome schedule_spot_checks() {
  LambdaSchedule s;
  s.kind = LambdaKind::PacboDefault;
  s.d = 2;
  const double lam = lambda_at(s, 1);
  const double tau = tau_schedule(20, 5);
  return {lam == 1.2 && tau == 0.1, fmt("lambda_1 = %.17g, tau(20, 5) = %.17g", lam, tau)};
}

}  // namespace

int main() {
  report(1, "Table 1 replication", table1_replication);
  report(2, "regret sublinearity and bound wiring", regret_wiring);
  report(3, "sampler vs grid oracle", sampler_vs_oracle);
  report(4, "detailed balance", detailed_balance);
  report(5, "density normalizations", normalizations);
  report(6, "KL bound dominance", kl_dominance);
  report(7, "streaming vs batch score", recursion_consistency);
  report(8, "schedule spot checks", schedule_spot_checks);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
