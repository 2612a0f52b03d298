#include "carlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::invalid_input: return "invalid-input";
  case ErrorKind::domain: return "domain";
  case ErrorKind::size_limit: return "size-limit";
  case ErrorKind::level: return "level";
  case ErrorKind::invariant: return "invariant";
  case ErrorKind::io: return "io";
  }
  return "unknown";
}

const Numerics& default_numerics() {
  static const Numerics numerics{};
  return numerics;
}

UnitVector::UnitVector(ComplexVector v, const Numerics& numerics) : values_(std::move(v)) {
  if (values_.size() < 1)
    throw InvalidInput("unit vector must have dimension >= 1");
  if (!values_.allFinite())
    throw InvalidInput("unit vector has non-finite entries");
  const double n = values_.norm();
  if (std::abs(n - 1.0) > numerics.unit_norm_tol)
    throw InvalidInput("vector norm " + std::to_string(n) + " is not 1");
}

UnitVector UnitVector::normalized(const ComplexVector& v) {
  if (v.size() < 1 || !v.allFinite())
    throw InvalidInput("cannot normalize an empty or non-finite vector");
  const double n = v.norm();
  if (n == 0.0)
    throw InvalidInput("cannot normalize the zero vector");
  return UnitVector(v / n, Unchecked{});
}

UnitVector UnitVector::basis(Index dim, Index k) {
  if (dim < 1 || k < 0 || k >= dim)
    throw InvalidInput("basis index out of range");
  ComplexVector e = ComplexVector::Zero(dim);
  e(k) = 1.0;
  return UnitVector(std::move(e), Unchecked{});
}

cplx overlap(const UnitVector& x, const UnitVector& y) {
  if (x.dim() != y.dim())
    throw InvalidInput("overlap: dimension mismatch");
  return x.values().dot(y.values()); // Eigen's dot conjugates the left operand
}

void check_square(const ComplexMatrix& a, const Numerics& numerics) {
  if (a.rows() < 1 || a.rows() != a.cols())
    throw InvalidInput("matrix must be square and nonempty");
  if (a.rows() > numerics.max_dim)
    throw SizeLimitError("matrix dimension " + std::to_string(a.rows()) +
                         " exceeds cap " + std::to_string(numerics.max_dim));
  if (!a.allFinite())
    throw InvalidInput("matrix has non-finite entries");
}

namespace {

void check_product_dim(Index da, Index db, const Numerics& numerics) {
  if (da > numerics.max_dim || db > numerics.max_dim || da * db > numerics.max_dim)
    throw SizeLimitError("Kronecker product dimension " + std::to_string(da * db) +
                         " exceeds cap " + std::to_string(numerics.max_dim));
}

} // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const Numerics& numerics) {
  check_product_dim(a.rows(), b.rows(), numerics);
  check_product_dim(a.cols(), b.cols(), numerics);
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& x, const ComplexVector& y, const Numerics& numerics) {
  check_product_dim(x.size(), y.size(), numerics);
  ComplexVector out(x.size() * y.size());
  for (Index i = 0; i < x.size(); ++i)
    out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

UnitVector kron(const UnitVector& x, const UnitVector& y, const Numerics& numerics) {
  // Products of unit vectors are unit vectors; renormalize away rounding drift.
  return UnitVector::normalized(kron(x.values(), y.values(), numerics));
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0)
    return 0.0;
  if (!a.allFinite())
    throw InvalidInput("operator_norm: non-finite entries");
  const ComplexMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm(const ComplexMatrix& a) {
  if (a.size() == 0)
    return 0.0;
  if (!a.allFinite())
    throw InvalidInput("trace_norm: non-finite entries");
  // Direct SVD; sqrt of small eigenvalues of a*a would lose half the digits.
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0 || !a.allFinite())
    return false;
  const ComplexMatrix defect =
      a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols());
  // Frobenius dominates the operator norm; skip the eigen-solve when it settles the answer.
  if (defect.norm() <= tol)
    return true;
  return operator_norm(defect) <= tol;
}

ComplexMatrix plane_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  ComplexMatrix r(2, 2);
  r << c, -s, s, c;
  return r;
}

ComplexMatrix rotation_unitary(double t) {
  if (!(std::abs(t) <= 1.0))
    throw DomainError("rotation_unitary: |t| must be <= 1, got " + std::to_string(t));
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  ComplexMatrix r(2, 2);
  r << t, -s, s, t;
  return r;
}

ComplexMatrix projector(const UnitVector& x) {
  return x.values() * x.values().adjoint();
}

ComplexMatrix unitary_exp(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian);
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, l); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Orthogonal unit direction of y relative to x, plus the coefficient s >= 0
// with y = <x|y> x + s * zeta.  Returns s = 0 when colinear.
double orthogonal_part(const ComplexVector& x, const ComplexVector& y, ComplexVector& zeta) {
  zeta = y - x.dot(y) * x;
  zeta -= x.dot(zeta) * x; // second Gram-Schmidt pass
  const double s = zeta.norm();
  if (s <= 1e-15) {
    zeta.setZero();
    return 0.0;
  }
  zeta /= s;
  return s;
}

} // namespace

ComplexMatrix two_plane_unitary(const UnitVector& xi, const UnitVector& eta) {
  if (xi.dim() != eta.dim())
    throw InvalidInput("two_plane_unitary: dimension mismatch");
  const Index d = xi.dim();
  const ComplexVector& x = xi.values();
  const cplx t = x.dot(eta.values());
  ComplexVector zeta;
  const double s = orthogonal_part(x, eta.values(), zeta);

  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  if (s == 0.0) {
    const cplx lambda = t / std::abs(t);
    u += (lambda - 1.0) * x * x.adjoint();
    return u;
  }
  // In the basis (xi, zeta): [[t, -s], [s, conj(t)]], determinant |t|^2 + s^2 = 1.
  ComplexMatrix basis(d, 2);
  basis.col(0) = x;
  basis.col(1) = zeta;
  ComplexMatrix block(2, 2);
  block << t, -s, s, std::conj(t);
  u += basis * (block - Eigen::Matrix2cd::Identity()) * basis.adjoint();
  return u;
}

ComplexMatrix span_basis(const UnitVector& x, const UnitVector& y) {
  if (x.dim() != y.dim())
    throw InvalidInput("span_basis: dimension mismatch");
  ComplexVector zeta;
  const double s = orthogonal_part(x.values(), y.values(), zeta);
  ComplexMatrix q(x.dim(), s == 0.0 ? 1 : 2);
  q.col(0) = x.values();
  if (s != 0.0)
    q.col(1) = zeta;
  return q;
}

double eigenphase_gap(std::span<const std::pair<double, double>> phases) {
  constexpr std::size_t max_factors = 24;
  if (phases.size() > max_factors)
    throw SizeLimitError("eigenphase_gap: at most 24 factors");
  const std::uint64_t patterns = std::uint64_t{1} << phases.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double total = 0.0;
    for (std::size_t j = 0; j < phases.size(); ++j)
      total += (mask >> j & 1U) ? phases[j].second : phases[j].first;
    best = std::max(best, std::abs(1.0 - std::polar(1.0, total)));
  }
  return best;
}

} // namespace carlab
