#pragma once

#include <cstdint>
#include <random>

namespace pacbo {

/// Reproducible random source. Every (seed, stream) pair maps to an
/// independent Mersenne Twister state through std::seed_seq, whose
/// algorithm is fixed by the standard. Variates are derived from raw
/// 64-bit words here instead of through <random> distributions, whose
/// algorithms are implementation-defined.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Chi-squared with an integer number of degrees of freedom.
  double chi_squared(unsigned dof);

  /// Child stream keyed by an extra identifier, deterministic in
  /// (seed, stream, child).
  Rng split(std::uint64_t child) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

Rng seeded_rng(std::uint64_t seed, std::uint64_t stream_id);

}  // namespace pacbo
