#include "pacbo/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pacbo {

namespace {

struct Assignment {
  std::vector<std::size_t> label;
  std::vector<double> dist;
  double loss = 0.0;
};

void assign(const Dataset& data, std::size_t n, const Centers& c, Assignment& a) {
  a.label.resize(n);
  a.dist.resize(n);
  a.loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < c.k(); ++j) {
      const double dist = squared_distance(data[i], c[j]);
      if (dist < best) {
        best = dist;
        arg = j;
      }
    }
    a.label[i] = arg;
    a.dist[i] = best;
    a.loss += best;
  }
}

// Indices of the distinct rows among the first n, in first-seen order.
std::vector<std::size_t> distinct_rows(const Dataset& data, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto ra = data[a], rb = data[b];
    if (std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())) return true;
    if (std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
    return a < b;
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<std::size_t> firsts;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || !std::equal(data[order[i]].begin(), data[order[i]].end(),
                              data[order[i - 1]].begin()))
      firsts.push_back(order[i]);
  }
  std::sort(firsts.begin(), firsts.end());
  return firsts;
}

Centers kmeanspp_seed(const Dataset& data, std::size_t n, std::size_t k, Rng& rng) {
  Centers c(data.dim());
  c.push_back(data[rng.uniform_index(n)]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(data[i], c[0]);
  while (c.k() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      const double u = rng.uniform() * total;
      double cum = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        cum += d2[i];
        if (u < cum) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_index(n);
    }
    c.push_back(data[pick]);
    const auto added = c[c.k() - 1];
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(data[i], added));
  }
  return c;
}

}  // namespace

double within_cluster_loss(const Centers& c, const Dataset& data, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.k(); ++j) best = std::min(best, squared_distance(data[i], c[j]));
    acc += best;
  }
  return acc;
}

KMeansResult lloyd(const Dataset& data, std::size_t n, Centers init, const KMeansOptions& opts) {
  const std::size_t d = data.dim();
  const std::size_t k = init.k();
  Centers c = std::move(init);
  Assignment a;
  assign(data, n, c, a);
  std::vector<double> sums(k * d);
  std::vector<std::size_t> counts(k);
  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = data[i];
      double* s = sums.data() + a.label[i] * d;
      for (std::size_t q = 0; q < d; ++q) s[q] += row[q];
      ++counts[a.label[i]];
    }
    for (std::size_t j = 0; j < k; ++j) {
      auto cj = c[j];
      if (counts[j] > 0) {
        for (std::size_t q = 0; q < d; ++q) cj[q] = sums[j * d + q] / static_cast<double>(counts[j]);
      } else {
        // Empty cluster: move to the point farthest from its center.
        const auto far = static_cast<std::size_t>(
            std::max_element(a.dist.begin(), a.dist.end()) - a.dist.begin());
        std::copy(data[far].begin(), data[far].end(), cj.begin());
        a.dist[far] = 0.0;
      }
    }
    const double previous = a.loss;
    assign(data, n, c, a);
    if (previous - a.loss <= opts.tolerance * std::max(previous, 1e-300)) break;
  }
  return {std::move(c), a.loss};
}

KMeansResult kmeans_fit(const Dataset& data, std::size_t n, std::size_t k,
                        const KMeansOptions& opts, Rng& rng) {
  if (k == 0) throw std::invalid_argument("kmeans_fit: k must be >= 1");
  if (n == 0 || n > data.size()) throw std::invalid_argument("kmeans_fit: no data");

  const auto distinct = distinct_rows(data, n);
  if (distinct.size() <= k) {
    Centers c(data.dim());
    for (std::size_t idx : distinct) c.push_back(data[idx]);
    std::vector<double> point(data.dim());
    for (std::size_t j = 0; c.k() < k; ++j) {
      const auto src = data[distinct[j % distinct.size()]];
      for (std::size_t q = 0; q < point.size(); ++q)
        point[q] = src[q] + opts.jitter * (2.0 * rng.uniform() - 1.0);
      c.push_back(point);
    }
    return {std::move(c), 0.0};
  }

  KMeansResult best;
  best.loss = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    auto fit = lloyd(data, n, kmeanspp_seed(data, n, k, rng), opts);
    if (fit.loss < best.loss) best = std::move(fit);
  }
  return best;
}

KMeansCache::KMeansCache(const Dataset& data, std::size_t prefix, KMeansOptions opts, Rng base)
    : data_(&data), prefix_(prefix), opts_(opts), base_(std::move(base)) {
  if (prefix == 0 || prefix > data.size()) throw std::invalid_argument("KMeansCache: bad prefix");
}

const KMeansResult& KMeansCache::get(std::size_t k) {
  if (auto it = fits_.find(k); it != fits_.end()) return it->second;
  Rng rng = base_.split(k);
  KMeansResult fit = kmeans_fit(*data_, prefix_, k, opts_, rng);
  if (k > 1 && fit.loss > 0.0) {
    const KMeansResult& lower = get(k - 1);
    if (lower.loss < fit.loss) {
      // Split candidate: the lower solution plus the worst-served point.
      Centers init = lower.centers;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < prefix_; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < init.k(); ++j)
          best = std::min(best, squared_distance((*data_)[i], init[j]));
        if (best > far_d) {
          far_d = best;
          far = i;
        }
      }
      init.push_back((*data_)[far]);
      auto split = lloyd(*data_, prefix_, std::move(init), opts_);
      if (split.loss < fit.loss) fit = std::move(split);
    }
  }
  return fits_.emplace(k, std::move(fit)).first->second;
}

}  // namespace pacbo
