#pragma once

#include <cstddef>
#include <map>

#include "pacbo/config.hpp"
#include "pacbo/rng.hpp"
#include "pacbo/types.hpp"

namespace pacbo {

struct KMeansResult {
  Centers centers;
  double loss = 0.0;  // sum over points of the squared distance to the nearest center
};

/// Sum of l(c, x_s) over the first n points.
double within_cluster_loss(const Centers& c, const Dataset& data, std::size_t n);

/// Lloyd iterations from k-means++ seeds, best of opts.restarts runs, on
/// the first n rows of data. Returns exactly k centers. When the data has
/// at most k distinct points, the distinct points are returned padded with
/// jittered copies (zero loss).
KMeansResult kmeans_fit(const Dataset& data, std::size_t n, std::size_t k,
                        const KMeansOptions& opts, Rng& rng);

/// Lloyd iterations from a given starting set of centers.
KMeansResult lloyd(const Dataset& data, std::size_t n, Centers init, const KMeansOptions& opts);

/// Fitted centers per k for one fixed data prefix. Fits are lazy, and
/// each k draws from its own child stream so results do not depend on the
/// order in which k values are requested. The fit for k also competes with
/// the best (k-1) solution plus a split, which keeps the loss
/// non-increasing in k.
class KMeansCache {
 public:
  KMeansCache(const Dataset& data, std::size_t prefix, KMeansOptions opts, Rng base);

  const KMeansResult& get(std::size_t k);
  std::size_t prefix() const { return prefix_; }

 private:
  const Dataset* data_;
  std::size_t prefix_;
  KMeansOptions opts_;
  Rng base_;
  std::map<std::size_t, KMeansResult> fits_;
};

}  // namespace pacbo
