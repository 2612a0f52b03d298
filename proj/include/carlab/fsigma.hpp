#pragma once

// Witness search for unitary equivalence of vector states: a net of
// unitaries, a net of test contractions, and the first net element whose
// pointwise gap over the test contractions stays below 1.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "carlab/states.hpp"

namespace carlab {

enum class NetKind { exhaustive, random };

const char* to_string(NetKind k);

/// Enumerated unitaries of M_{2^level}.  Element 0 is always the identity.
struct UnitaryNet {
  TruncationLevel level{0};
  double resolution = 1.0;   // target covering radius in operator norm
  NetKind kind = NetKind::exhaustive;
  double grid_spacing = 0.0; // Hermitian-generator grid step (exhaustive nets)
  std::vector<ComplexMatrix> elements;
};

/// Number of Hermitian grid points an exhaustive net at this resolution
/// visits before filtering (as a double; it overflows integers quickly).
double estimated_net_cardinality(TruncationLevel level, double epsilon);

/// exp(iH) for H on a grid of Hermitian matrices with ||H|| <= pi + epsilon,
/// spaced so every unitary lies within epsilon of some element.  Grid points
/// are visited lexicographically, each coordinate in the order 0, 1, -1, 2,
/// -2, ...; exact duplicates are dropped.  Throws SizeLimitError (with the
/// estimated cardinality) when the grid exceeds `max_candidates`, and
/// DomainError unless 0 < epsilon <= 1 and level <= 4.
UnitaryNet enumerate_net(TruncationLevel level, double epsilon,
                         double max_candidates = 2.0e6);

/// Identity followed by size - 1 seeded Haar unitaries; `nominal_resolution`
/// is recorded but not guaranteed.
UnitaryNet random_net(TruncationLevel level, double nominal_resolution, std::size_t size,
                      std::uint64_t seed);

struct DensityReport {
  std::size_t samples;
  double max_nearest;   // worst distance from a random unitary to the net
  double mean_nearest;
};

/// Distance from `samples` seeded Haar unitaries to their nearest net element.
DensityReport net_density(const UnitaryNet& net, std::size_t samples, std::uint64_t seed);

/// Contractions (operator norm <= 1 + 1e-9) on M_{2^level}.
class TestElementNet {
public:
  TestElementNet(TruncationLevel level, std::vector<ComplexMatrix> elements);
  /// Seeded Hermitian contractions followed by all matrix units.
  static TestElementNet standard(TruncationLevel level, std::uint64_t seed,
                                 int random_count = 25);

  TruncationLevel level() const { return level_; }
  std::span<const ComplexMatrix> elements() const { return elements_; }

private:
  TruncationLevel level_;
  std::vector<ComplexMatrix> elements_;
};

struct Witness {
  std::size_t index;
  ComplexMatrix u;
  double gap;
};

/// Threshold used for the strict "< 1".
inline constexpr double witness_threshold = 1.0 - 1e-12;

/// First net element u with sup_gap(phi, psi, u, tests) < 1.
std::optional<Witness> witness_search(const VectorState& phi, const VectorState& psi,
                                      const UnitaryNet& net, const TestElementNet& tests);

struct DistanceCheck {
  double norm_distance; // ||phi - psi o Ad u||
  bool below2;
};

DistanceCheck distance_bound_check(const VectorState& phi, const VectorState& psi,
                                   const ComplexMatrix& u,
                                   const Numerics& numerics = default_numerics());

/// v * exp(iK) for a seeded Hermitian K scaled so that ||u - v|| = delta (0 <= delta < 2).
ComplexMatrix perturb_unitary(const ComplexMatrix& v, double delta, std::uint64_t seed);

} // namespace carlab
