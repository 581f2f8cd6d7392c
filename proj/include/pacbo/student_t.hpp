#pragma once

#include <cstddef>
#include <span>

#include "pacbo/rng.hpp"

// Helpers for the d-variate Student distribution with 3 degrees of
// freedom and scale matrix sigma^2 I, written in the form
//   (1 + |x - m|^2 / (6 tau^2))^{-(3+d)/2},  sigma^2 = 2 tau^2.
namespace pacbo::student3 {

inline constexpr double kDof = 3.0;

/// log of the normalizing constant Gamma((3+d)/2) / (Gamma(3/2) (3 pi)^{d/2} sigma^d).
double log_norm(std::size_t d, double sigma);

/// log density at x of the block centered at m with parameter tau.
double log_density(std::span<const double> x, std::span<const double> m, double tau);

/// P(|Z|_2 <= r) for Z standard d-variate Student(3). |Z|^2/d ~ F(d, 3),
/// so this is the regularized incomplete beta I_{r^2/(r^2+3)}(d/2, 3/2).
double radial_cdf(std::size_t d, double r);

/// Draws one block m + sqrt(2) tau G / sqrt(W/3) into out.
void sample(std::span<double> out, std::span<const double> m, double tau, Rng& rng);

}  // namespace pacbo::student3
