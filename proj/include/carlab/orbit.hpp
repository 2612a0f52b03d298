#pragma once

// Minimal unitary displacement between unit vectors and between product
// vector states: closed forms plus a brute-force search used as an oracle.

#include <cstdint>
#include <span>
#include <vector>

#include "carlab/linalg.hpp"

namespace carlab {

struct OverlapReport {
  cplx overlap;        // <xi|eta>
  double abs_overlap;  // |<xi|eta>|, clamped to [0, 1]
  /// sqrt(2(1 - |<xi|eta>|)): infimum of ||I - u|| when u*xi may equal eta up to a phase.
  double closed_form_distance;
  /// sqrt(2(1 - Re<xi|eta>)): infimum of ||I - u|| under the exact constraint u*xi = eta.
  double exact_constraint_distance;
};

OverlapReport min_distance_closed_form(const UnitVector& xi, const UnitVector& eta);

/// Feasible set searched by the oracle.
enum class Constraint {
  exact_vector,   // u xi = eta
  state_equality, // omega_xi = omega_eta o Ad u, i.e. u xi = lambda eta with |lambda| = 1
};

struct OracleResult {
  double value = 0.0;
  long evaluations = 0;
  int restarts = 0;
};

/// Minimizes ||I - u|| over u = S * two_plane_unitary(xi, eta) with S ranging
/// over the stabilizer of eta (exact_vector) or of the ray C*eta
/// (state_equality).  Seeded Haar restarts, each refined by Nelder-Mead in a
/// chart recentred after every round, the simplex shrinking from 0.5 to 1e-7.
/// Spends `budget` objective evaluations (>= 1000).  Dimensions 2..4 only.
OracleResult min_distance_search(const UnitVector& xi, const UnitVector& eta,
                                 Constraint constraint, long budget, std::uint64_t seed);

/// Exact-constraint oracle value.
double min_distance_bruteforce(const UnitVector& xi, const UnitVector& eta, long budget,
                               std::uint64_t seed);

struct ProductDistance {
  double product_overlap;   // prod |<xi_i|eta_i>|
  double constant_one;      // sqrt(2(1 - p))
  double doubled_constant;   // 2 sqrt(2(1 - p))
};

ProductDistance product_min_distance(std::span<const UnitVector> xis,
                                     std::span<const UnitVector> etas,
                                     const Numerics& numerics = default_numerics());

/// Tensor product of the factors, left to right.
UnitVector tensor_product(std::span<const UnitVector> factors,
                          const Numerics& numerics = default_numerics());

} // namespace carlab
