#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "pacbo/rng.hpp"
#include "pacbo/types.hpp"

namespace pacbo {

/// Ten groups in the plane revealed one every 20 steps: uniform on unit
/// squares for t <= 100, unit-covariance Gaussians afterwards.
struct PaperTenGroups {
  std::size_t T = 200;
};

/// Stationary mixture; covariances are full d x d matrices, row-major.
struct GaussianMixture {
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> covariances;
  std::vector<double> weights;
  std::size_t T = 100;
};

/// Returns the given points unchanged.
struct FixedPoints {
  Dataset points;
  std::vector<std::size_t> k_true;  // optional, same length as points when set
};

using SyntheticSpec = std::variant<PaperTenGroups, GaussianMixture, FixedPoints>;

struct GeneratedStream {
  Dataset data;
  std::vector<std::size_t> k_true;  // k*_t per step; empty when unknown
};

/// (c_{1,t}, c_{2,t}) with c_1 = -5 pi/2 + (5 pi/9)(floor((t-1)/20) - 1), c_2 = 5 sin(c_1).
std::array<double, 2> paper_model_centers(std::size_t t);

/// k*_t = min(ceil(t/20), 10).
std::size_t paper_model_k_true(std::size_t t);

GeneratedStream generate(const SyntheticSpec& spec, Rng& rng);

}  // namespace pacbo
