#include "carlab/car.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace carlab {

TruncationLevel::TruncationLevel(int n) : n_(n) {
  if (n < 0 || n > max_level)
    throw LevelError("truncation level " + std::to_string(n) + " outside [0, " +
                     std::to_string(max_level) + "]");
}

TruncationLevel level_of_dim(Index dim) {
  for (int n = 0; n <= max_level; ++n)
    if ((Index{1} << n) == dim)
      return TruncationLevel(n);
  throw InvalidInput("dimension " + std::to_string(dim) + " is not 2^n with n <= 12");
}

ComplexMatrix embed(const ComplexMatrix& a, TruncationLevel n) {
  check_square(a);
  const TruncationLevel m = level_of_dim(a.rows());
  if (m.n() > n.n())
    throw LevelError("embed: source level " + std::to_string(m.n()) +
                     " above target level " + std::to_string(n.n()));
  if (m == n)
    return a;
  const Index tail = Index{1} << (n.n() - m.n());
  return kron(a, ComplexMatrix::Identity(tail, tail));
}

UnitVector angle_vector(double angle) {
  constexpr double half_pi = std::numbers::pi / 2;
  if (!(angle > -half_pi && angle < half_pi))
    throw DomainError("angle " + std::to_string(angle) + " outside (-pi/2, pi/2)");
  ComplexVector v(2);
  v << std::cos(angle), std::sin(angle);
  return UnitVector(std::move(v));
}

UnitVector product_vector(std::span<const double> angles, int from, int to) {
  if (from < 1 || to < from || static_cast<std::size_t>(to) > angles.size())
    throw InvalidInput("product_vector: index range [" + std::to_string(from) + ", " +
                       std::to_string(to) + "] invalid for " +
                       std::to_string(angles.size()) + " angles");
  if (to - from + 1 > max_level)
    throw SizeLimitError("product_vector: more than 12 factors");
  UnitVector out = angle_vector(angles[from - 1]);
  for (int j = from + 1; j <= to; ++j)
    out = kron(out, angle_vector(angles[j - 1]));
  return out;
}

UnitVector product_vector(std::span<const double> angles) {
  return product_vector(angles, 1, static_cast<int>(angles.size()));
}

} // namespace carlab
