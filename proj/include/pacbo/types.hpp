#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace pacbo {

/// Ordered collection of points in R^d stored row-major. Shared storage
/// for observation streams and center vectors.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<double> coords);
  PointSet(std::size_t dim, std::initializer_list<std::initializer_list<double>> rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> operator[](std::size_t i) {
    return {coords_.data() + i * dim_, dim_};
  }

  void push_back(std::span<const double> point);
  const std::vector<double>& coords() const { return coords_; }
  std::vector<double>& coords() { return coords_; }

  /// First n rows as a new set.
  PointSet prefix(std::size_t n) const;

  bool all_finite() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Observation stream x_1, x_2, ... (row s-1 holds x_s).
class Dataset : public PointSet {
 public:
  using PointSet::PointSet;
  Dataset(PointSet points) : PointSet(std::move(points)) {}
};

/// A partition of R^d given by k >= 1 cluster centers. Order carries no
/// meaning; the loss is permutation invariant.
class Centers : public PointSet {
 public:
  using PointSet::PointSet;
  Centers(PointSet points) : PointSet(std::move(points)) {}
  std::size_t k() const { return size(); }
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);

}  // namespace pacbo
