#include "doctest.h"

#include <cmath>
#include <vector>

#include "carlab/random.hpp"
#include "carlab/states.hpp"

using namespace carlab;

TEST_CASE("vector states") {
  const VectorState phi(angle_vector(0.3), TruncationLevel(1));
  CHECK(evaluate(phi, ComplexMatrix::Identity(2, 2)) == cplx(1.0));
  ComplexMatrix e11 = ComplexMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  CHECK(evaluate(phi, e11).real() == doctest::Approx(std::cos(0.3) * std::cos(0.3)));
  CHECK_THROWS_AS(VectorState(UnitVector::basis(2, 0), TruncationLevel(2)), InvalidInput);
  CHECK_THROWS_AS(evaluate(phi, ComplexMatrix::Identity(4, 4)), InvalidInput);
}

TEST_CASE("global phase does not change the state") {
  Rng rng(8);
  const UnitVector xi = rng.unit_vector(4);
  const VectorState a(xi);
  const VectorState b(UnitVector(std::polar(1.0, 0.7) * xi.values()));
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix m = rng.contraction(4);
    CHECK(std::abs(evaluate(a, m) - evaluate(b, m)) < 1e-14);
  }
  CHECK(state_distance(a, b) < 1e-12);
}

TEST_CASE("pullback realizes phi o Ad u and composes") {
  Rng rng(9);
  const VectorState phi(rng.unit_vector(4));
  const ComplexMatrix u = rng.haar_unitary(4);
  const ComplexMatrix w = rng.haar_unitary(4);
  const VectorState pu = pullback(phi, u);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix a = rng.contraction(4);
    CHECK(std::abs(evaluate(pu, a) - evaluate(phi, u * a * u.adjoint())) < 1e-13);
  }
  // (phi o Ad u) o Ad w = phi o Ad (u w)
  const VectorState twice = pullback(pu, w);
  const VectorState once = pullback(phi, u * w);
  CHECK(state_distance(twice, once) < 1e-12);
  CHECK_THROWS_AS(pullback(phi, 2.0 * u), InvalidInput);
  CHECK_THROWS_AS(pullback(phi, ComplexMatrix::Identity(2, 2)), InvalidInput);
}

TEST_CASE("state distance") {
  const VectorState e0(UnitVector::basis(2, 0));
  const VectorState e1(UnitVector::basis(2, 1));
  CHECK(state_distance(e0, e0) == doctest::Approx(0.0));
  CHECK(state_distance(e0, e1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(state_distance(e0, VectorState(UnitVector::basis(4, 0))), InvalidInput);

  Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = Index{1} << (1 + trial % 4);
    const VectorState a(rng.unit_vector(d));
    const VectorState b(rng.unit_vector(d));
    const double c = std::abs(overlap(a.vector(), b.vector()));
    CHECK(std::abs(state_distance(a, b) - 2 * std::sqrt(1 - c * c)) < 1e-8);
    // Dense trace norm as an independent path.
    const double dense = trace_norm(projector(a.vector()) - projector(b.vector()));
    CHECK(std::abs(state_distance(a, b) - dense) < 1e-10);
  }
}

TEST_CASE("separation witness values") {
  const auto w = separation_witness(UnitVector::basis(2, 0), UnitVector::basis(2, 1));
  CHECK(w.value_phi == doctest::Approx(1.0));
  CHECK(w.value_psi == doctest::Approx(-1.0));
  CHECK(w.norm == doctest::Approx(1.0));

  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const UnitVector x = rng.unit_vector(4);
    const UnitVector y = rng.unit_vector(4);
    const double c2 = std::norm(overlap(x, y));
    const auto dense = separation_witness(x, y);
    const auto lean = separation_values(x, y);
    CHECK(std::abs(dense.value_phi - (1 - c2)) < 1e-12);
    CHECK(std::abs(dense.value_psi - (c2 - 1)) < 1e-12);
    CHECK(std::abs(dense.norm - std::sqrt(1 - c2)) < 1e-12);
    CHECK(std::abs(dense.norm - operator_norm(dense.witness)) < 1e-12);
    CHECK(std::abs(lean.value_phi - dense.value_phi) < 1e-13);
    CHECK(std::abs(lean.value_psi - dense.value_psi) < 1e-13);
  }
  CHECK_THROWS_AS(separation_witness(UnitVector::basis(2, 0), UnitVector::basis(3, 0)),
                  InvalidInput);
}

TEST_CASE("sup_gap") {
  Rng rng(13);
  const VectorState psi(rng.unit_vector(4));
  const ComplexMatrix v = rng.haar_unitary(4);
  const VectorState phi = pullback(psi, v);
  std::vector<ComplexMatrix> tests;
  for (int i = 0; i < 20; ++i)
    tests.push_back(rng.contraction(4));
  CHECK(sup_gap(phi, psi, v, tests) < 1e-13);
  CHECK(sup_gap(psi, psi, ComplexMatrix::Identity(4, 4), tests) == 0.0);

  tests.push_back(2.0 * ComplexMatrix::Identity(4, 4));
  CHECK_THROWS_AS(sup_gap(phi, psi, v, tests), InvalidInput);
}

TEST_CASE("perturbation bound: gap between Ad u and Ad v is at most 2||u - v||") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const VectorState psi(rng.unit_vector(4));
    const ComplexMatrix v = rng.haar_unitary(4);
    const ComplexMatrix u = v * unitary_exp(0.3 * rng.hermitian_contraction(4));
    std::vector<ComplexMatrix> tests;
    for (int i = 0; i < 10; ++i)
      tests.push_back(rng.contraction(4));
    const double gap = sup_gap(pullback(psi, v), psi, u, tests);
    CHECK(gap <= 2 * operator_norm(u - v) + 1e-12);
    // Unit-ball supremum is the trace distance.
    CHECK(state_distance(pullback(psi, v), pullback(psi, u)) <= 2 * operator_norm(u - v) + 1e-12);
  }
}
