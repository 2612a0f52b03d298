#include "carlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carlab {

VectorState::VectorState(UnitVector vector, TruncationLevel level)
    : vector_(std::move(vector)), level_(level) {
  if (vector_.dim() != level_.dim())
    throw InvalidInput("vector state: vector dimension " + std::to_string(vector_.dim()) +
                       " does not match level " + std::to_string(level_.n()));
}

VectorState::VectorState(UnitVector vector)
    : vector_(std::move(vector)), level_(level_of_dim(vector_.dim())) {}

cplx evaluate(const VectorState& phi, const ComplexMatrix& a) {
  if (a.rows() != phi.dim() || a.cols() != phi.dim())
    throw InvalidInput("evaluate: matrix dimension does not match the state");
  const ComplexVector& xi = phi.vector().values();
  return xi.dot(a * xi);
}

VectorState pullback(const VectorState& phi, const ComplexMatrix& u, const Numerics& numerics) {
  if (u.rows() != phi.dim() || u.cols() != phi.dim())
    throw InvalidInput("pullback: unitary dimension does not match the state");
  if (!is_unitary(u, numerics.unitary_tol))
    throw InvalidInput("pullback: matrix is not unitary");
  return VectorState(UnitVector::normalized(u.adjoint() * phi.vector().values()), phi.level());
}

namespace {

// P_xi - P_eta lives on span{xi, eta}; its compression to that span has the
// same nonzero singular values.
ComplexMatrix compressed_difference(const UnitVector& xi, const UnitVector& eta) {
  const ComplexMatrix q = span_basis(xi, eta);
  const ComplexVector x = q.adjoint() * xi.values();
  const ComplexVector y = q.adjoint() * eta.values();
  return x * x.adjoint() - y * y.adjoint();
}

} // namespace

double state_distance(const VectorState& phi, const VectorState& psi) {
  if (!(phi.level() == psi.level()))
    throw InvalidInput("state_distance: level mismatch");
  return trace_norm(compressed_difference(phi.vector(), psi.vector()));
}

SeparationWitness separation_witness(const UnitVector& xi, const UnitVector& eta) {
  if (xi.dim() != eta.dim())
    throw InvalidInput("separation_witness: dimension mismatch");
  SeparationWitness out;
  out.witness = projector(xi) - projector(eta);
  const ComplexVector& x = xi.values();
  const ComplexVector& y = eta.values();
  out.value_phi = x.dot(out.witness * x).real();
  out.value_psi = y.dot(out.witness * y).real();
  out.norm = operator_norm(compressed_difference(xi, eta));
  return out;
}

WitnessValues separation_values(const UnitVector& xi, const UnitVector& eta) {
  if (xi.dim() != eta.dim())
    throw InvalidInput("separation_values: dimension mismatch");
  const ComplexVector& x = xi.values();
  const ComplexVector& y = eta.values();
  auto apply = [&](const ComplexVector& z) -> ComplexVector {
    return x * x.dot(z) - y * y.dot(z);
  };
  WitnessValues out;
  out.value_phi = x.dot(apply(x)).real();
  out.value_psi = y.dot(apply(y)).real();
  out.norm = operator_norm(compressed_difference(xi, eta));
  return out;
}

double sup_gap_unchecked(const VectorState& phi, const VectorState& psi,
                         const ComplexMatrix& u, std::span<const ComplexMatrix> test_set) {
  const ComplexVector& xi = phi.vector().values();
  // psi(u a u*) = <a w | w> with w = u* eta.
  const ComplexVector w = u.adjoint() * psi.vector().values();
  double best = 0.0;
  for (const ComplexMatrix& a : test_set)
    best = std::max(best, std::abs(xi.dot(a * xi) - w.dot(a * w)));
  return best;
}

double sup_gap(const VectorState& phi, const VectorState& psi, const ComplexMatrix& u,
               std::span<const ComplexMatrix> test_set) {
  if (!(phi.level() == psi.level()) || u.rows() != phi.dim() || u.cols() != phi.dim())
    throw InvalidInput("sup_gap: dimension mismatch");
  for (const ComplexMatrix& a : test_set) {
    if (a.rows() != phi.dim() || a.cols() != phi.dim())
      throw InvalidInput("sup_gap: test element dimension mismatch");
    if (operator_norm(a) > 1.0 + 1e-9)
      throw InvalidInput("sup_gap: test element is not a contraction");
  }
  return sup_gap_unchecked(phi, psi, u, test_set);
}

} // namespace carlab
