#include "carlab/random.hpp"

#include <cmath>
#include <numbers>

namespace carlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 == 0.0)
    u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

UnitVector Rng::unit_vector(Index dim) {
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i)
    v(i) = complex_normal();
  return UnitVector::normalized(v);
}

UnitVector Rng::real_unit_vector(Index dim) {
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i)
    v(i) = normal();
  return UnitVector::normalized(v);
}

ComplexMatrix Rng::haar_unitary(Index dim) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i)
      g(i, j) = complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0)
      q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix Rng::hermitian_contraction(Index dim) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i)
      g(i, j) = complex_normal();
  ComplexMatrix h = (g + g.adjoint()) / 2.0;
  const double n = operator_norm(h);
  if (n > 0.0)
    h *= uniform() / n;
  return h;
}

ComplexMatrix Rng::contraction(Index dim) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i)
      g(i, j) = complex_normal();
  const double n = operator_norm(g);
  if (n > 0.0)
    g *= uniform() / n;
  return g;
}

} // namespace carlab
