#pragma once

// Seeded generators for experiments and tests. Distributions are mapped by
// hand from mt19937_64 output so results do not depend on the standard
// library's distribution implementations.

#include <cstdint>
#include <random>

#include "carlab/linalg.hpp"

namespace carlab {

/// splitmix64 finalizer; derives independent per-trial seeds from a root seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` under `root`: splitmix64(root + (index + 1) * golden gamma).
std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();
  cplx complex_normal();

  /// Haar-distributed unit vector in C^dim.
  UnitVector unit_vector(Index dim);
  /// Unit vector in R^dim (uniform on the sphere).
  UnitVector real_unit_vector(Index dim);
  /// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
  ComplexMatrix haar_unitary(Index dim);
  /// Hermitian matrix with operator norm uniform in [0, 1].
  ComplexMatrix hermitian_contraction(Index dim);
  /// Ginibre matrix rescaled to operator norm uniform in [0, 1].
  ComplexMatrix contraction(Index dim);

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace carlab
