#pragma once

#include <span>

#include "carlab/car.hpp"

namespace carlab {

/// Vector state a -> <a xi | xi> on M_{2^n}.
class VectorState {
public:
  VectorState(UnitVector vector, TruncationLevel level);
  /// Level inferred from the vector dimension.
  explicit VectorState(UnitVector vector);

  const UnitVector& vector() const { return vector_; }
  TruncationLevel level() const { return level_; }
  Index dim() const { return vector_.dim(); }

private:
  UnitVector vector_;
  TruncationLevel level_;
};

cplx evaluate(const VectorState& phi, const ComplexMatrix& a);

/// phi o Ad u, i.e. the vector state of u* xi.  Throws InvalidInput if u is not unitary.
VectorState pullback(const VectorState& phi, const ComplexMatrix& u,
                     const Numerics& numerics = default_numerics());

/// Norm of phi - psi as functionals: trace norm of P_xi - P_eta.
double state_distance(const VectorState& phi, const VectorState& psi);

struct SeparationWitness {
  ComplexMatrix witness; // P_xi - P_eta
  double value_phi;      // omega_xi(witness)  = 1 - c^2
  double value_psi;      // omega_eta(witness) = c^2 - 1
  double norm;           // operator norm       = sqrt(1 - c^2)
};

SeparationWitness separation_witness(const UnitVector& xi, const UnitVector& eta);

struct WitnessValues {
  double value_phi;
  double value_psi;
  double norm;
};

/// The values of separation_witness, applying P_xi - P_eta as a rank-two map
/// instead of forming the dense matrix.
WitnessValues separation_values(const UnitVector& xi, const UnitVector& eta);

/// max_a |phi(a) - psi(u a u*)| over the test elements, each of operator norm <= 1 + 1e-9.
double sup_gap(const VectorState& phi, const VectorState& psi, const ComplexMatrix& u,
               std::span<const ComplexMatrix> test_set);

/// sup_gap without re-validating the test set or u; used by searches that
/// validate once up front.
double sup_gap_unchecked(const VectorState& phi, const VectorState& psi,
                         const ComplexMatrix& u, std::span<const ComplexMatrix> test_set);

} // namespace carlab
