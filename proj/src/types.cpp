#include "pacbo/types.hpp"

#include <cmath>
#include <stdexcept>

namespace pacbo {

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("PointSet: dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw std::invalid_argument("PointSet: dimension must be positive");
  if (coords_.size() % dim != 0)
    throw std::invalid_argument("PointSet: coordinate count is not a multiple of dim");
}

PointSet::PointSet(std::size_t dim,
                   std::initializer_list<std::initializer_list<double>> rows)
    : PointSet(dim) {
  for (const auto& row : rows) {
    if (row.size() != dim) throw std::invalid_argument("PointSet: row has wrong dimension");
    coords_.insert(coords_.end(), row.begin(), row.end());
  }
}

void PointSet::push_back(std::span<const double> point) {
  if (point.size() != dim_) throw std::invalid_argument("PointSet: dimension mismatch");
  coords_.insert(coords_.end(), point.begin(), point.end());
}

PointSet PointSet::prefix(std::size_t n) const {
  if (n > size()) throw std::out_of_range("PointSet::prefix beyond size");
  return PointSet(dim_, std::vector<double>(coords_.begin(), coords_.begin() + n * dim_));
}

bool PointSet::all_finite() const {
  for (double v : coords_)
    if (!std::isfinite(v)) return false;
  return true;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

double squared_norm(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return acc;
}

}  // namespace pacbo
