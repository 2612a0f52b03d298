#pragma once

// Finite truncations M_{2^n} of the CAR algebra. Tensor factor 1 is the
// outermost Kronecker index, so a in M_{2^m} sits in M_{2^n} as a (x) I.

#include <span>

#include "carlab/linalg.hpp"

namespace carlab {

inline constexpr int max_level = 12;

/// Number of M_2 tensor factors; dim = 2^n.
class TruncationLevel {
public:
  explicit TruncationLevel(int n);

  int n() const { return n_; }
  Index dim() const { return Index{1} << n_; }

  friend bool operator==(TruncationLevel, TruncationLevel) = default;

private:
  int n_;
};

/// Level m with 2^m == dim; throws InvalidInput if dim is not a power of two within the cap.
TruncationLevel level_of_dim(Index dim);

/// a (x) I_{2^(n-m)} for a in M_{2^m}.
ComplexMatrix embed(const ComplexMatrix& a, TruncationLevel n);

/// (cos a, sin a); throws DomainError unless a is strictly inside (-pi/2, pi/2).
UnitVector angle_vector(double angle);

/// Tensor product of angle_vector(angles[j]) for 1-based j = from..to.
UnitVector product_vector(std::span<const double> angles, int from, int to);

/// product_vector over the whole span.
UnitVector product_vector(std::span<const double> angles);

} // namespace carlab
