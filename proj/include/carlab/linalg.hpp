#pragma once

// Dense complex linear algebra used throughout the lab: Kronecker products,
// operator/trace norms, unitarity checks and the explicit 2x2 and two-plane
// unitaries that realize minimal displacements between unit vectors.

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "carlab/errors.hpp"

namespace carlab {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Tolerances and size caps shared by every module.
struct Numerics {
  double unitary_tol = 1e-10;
  double unit_norm_tol = 1e-10;
  Index max_dim = 4096;
};

const Numerics& default_numerics();

/// Complex vector of unit Euclidean norm.
class UnitVector {
public:
  /// Throws InvalidInput unless | |v| - 1 | <= numerics.unit_norm_tol.
  explicit UnitVector(ComplexVector v, const Numerics& numerics = default_numerics());

  /// Rescales a nonzero finite vector to unit norm.
  static UnitVector normalized(const ComplexVector& v);

  /// Standard basis vector e_k (0-based) of C^dim.
  static UnitVector basis(Index dim, Index k);

  Index dim() const { return values_.size(); }
  const ComplexVector& values() const { return values_; }
  cplx operator[](Index i) const { return values_(i); }

private:
  struct Unchecked {};
  UnitVector(ComplexVector v, Unchecked) : values_(std::move(v)) {}

  ComplexVector values_;
};

/// <x|y> = sum conj(x_i) y_i, so that y = <x|y> x + (component orthogonal to x).
cplx overlap(const UnitVector& x, const UnitVector& y);

/// Throws unless `a` is square, nonempty, within the dimension cap and finite.
void check_square(const ComplexMatrix& a, const Numerics& numerics = default_numerics());

/// Kronecker product; factor `a` is the outer (slow) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   const Numerics& numerics = default_numerics());
ComplexVector kron(const ComplexVector& x, const ComplexVector& y,
                   const Numerics& numerics = default_numerics());
UnitVector kron(const UnitVector& x, const UnitVector& y,
                const Numerics& numerics = default_numerics());

/// Largest singular value, from the Hermitian eigen-decomposition of a*a.
double operator_norm(const ComplexMatrix& a);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

bool is_unitary(const ComplexMatrix& a, double tol = default_numerics().unitary_tol);

/// Real plane rotation [[cos th, -sin th], [sin th, cos th]].
ComplexMatrix plane_rotation(double theta);

/// The rotation [[t, -sqrt(1-t^2)], [sqrt(1-t^2), t]]; maps (1,0) to (t, sqrt(1-t^2)).
ComplexMatrix rotation_unitary(double t);

/// Rank-one projection |x><x|.
ComplexMatrix projector(const UnitVector& x);

/// exp(iH) for Hermitian H.
ComplexMatrix unitary_exp(const ComplexMatrix& hermitian);

/// Unitary u with u xi = eta that acts as a determinant-one rotation on
/// span{xi, eta} and as the identity on its orthogonal complement.
/// ||I - u|| = sqrt(2(1 - Re<xi|eta>)).  When eta = lambda*xi the result is
/// multiplication by lambda on C*xi and the identity elsewhere.
ComplexMatrix two_plane_unitary(const UnitVector& xi, const UnitVector& eta);

/// Orthonormal basis (columns) of span{x, y}; one column when colinear.
ComplexMatrix span_basis(const UnitVector& x, const UnitVector& y);

/// Unitary eigenphases of the tensor product of operators with eigenphases
/// `phases[j] = {p, q}`: max over all choices of |1 - exp(i * sum)|.
/// This equals ||I - (tensor of the factors)|| for normal factors.
double eigenphase_gap(std::span<const std::pair<double, double>> phases);

} // namespace carlab
