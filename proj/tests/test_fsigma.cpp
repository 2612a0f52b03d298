#include "doctest.h"

#include <cmath>
#include <numbers>

#include "carlab/fsigma.hpp"
#include "carlab/random.hpp"

using namespace carlab;

TEST_CASE("net arguments") {
  CHECK_THROWS_AS(enumerate_net(TruncationLevel(1), 0.0), DomainError);
  CHECK_THROWS_AS(enumerate_net(TruncationLevel(1), 1.5), DomainError);
  CHECK_THROWS_AS(enumerate_net(TruncationLevel(5), 0.5), DomainError);
  CHECK_THROWS_AS(enumerate_net(TruncationLevel(2), 0.4), SizeLimitError);
  CHECK(estimated_net_cardinality(TruncationLevel(1), 0.4) == 194481.0);
  CHECK_THROWS_AS(random_net(TruncationLevel(1), 0.4, 0, 1), InvalidInput);
}

TEST_CASE("level-zero net is a grid on the circle") {
  const UnitaryNet net = enumerate_net(TruncationLevel(0), 0.4);
  REQUIRE(net.elements.size() >= 8);
  CHECK(net.elements[0](0, 0) == cplx(1.0));
  for (const auto& u : net.elements)
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-15);
  for (int k = 0; k < 360; ++k) {
    const cplx z = std::polar(1.0, k * std::numbers::pi / 180);
    double best = 2.0;
    for (const auto& u : net.elements)
      best = std::min(best, std::abs(u(0, 0) - z));
    CHECK(best <= 0.4);
  }
}

TEST_CASE("dim-2 net") {
  const UnitaryNet net = enumerate_net(TruncationLevel(1), 0.5);
  CHECK((net.elements[0] - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  for (std::size_t i = 0; i < net.elements.size(); i += 97)
    CHECK(is_unitary(net.elements[i], 1e-9));
  const ComplexMatrix target = rotation_unitary(0.3);
  double best = 2.0;
  for (const auto& u : net.elements)
    best = std::min(best, operator_norm(u - target));
  CHECK(best < 0.5);
  const DensityReport r = net_density(net, 100, 3);
  CHECK(r.max_nearest <= 0.5 + 1e-6);
  CHECK(r.mean_nearest <= r.max_nearest);
  const UnitaryNet again = enumerate_net(TruncationLevel(1), 0.5);
  REQUIRE(again.elements.size() == net.elements.size());
  CHECK((again.elements[1234] - net.elements[1234]).norm() == 0.0);
}

TEST_CASE("test element nets") {
  const TestElementNet t = TestElementNet::standard(TruncationLevel(2), 4);
  CHECK(t.elements().size() == 25 + 16);
  for (const auto& a : t.elements())
    CHECK(operator_norm(a) <= 1 + 1e-9);
  CHECK_THROWS_AS(TestElementNet(TruncationLevel(1), {2.0 * ComplexMatrix::Identity(2, 2)}),
                  InvalidInput);
  CHECK_THROWS_AS(TestElementNet(TruncationLevel(1), {ComplexMatrix::Identity(4, 4)}),
                  InvalidInput);
}

TEST_CASE("witness search") {
  const TruncationLevel level(1);
  const UnitaryNet net = enumerate_net(level, 0.4);
  const TestElementNet tests = TestElementNet::standard(level, 5);
  Rng rng(70);
  const VectorState psi(rng.unit_vector(2), level);

  const auto same = witness_search(psi, psi, net, tests);
  REQUIRE(same);
  CHECK(same->index == 0);
  CHECK(same->gap == 0.0);

  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix v = rng.haar_unitary(2);
    const VectorState phi = pullback(psi, v);
    const auto w = witness_search(phi, psi, net, tests);
    REQUIRE(w);
    CHECK(w->gap < 1.0);
    CHECK(w->gap == sup_gap(phi, psi, w->u, tests.elements()));
    const DistanceCheck d = distance_bound_check(phi, psi, w->u);
    CHECK(d.below2);
  }

  const UnitaryNet other = enumerate_net(TruncationLevel(0), 0.4);
  CHECK_THROWS_AS(witness_search(psi, psi, other, tests), InvalidInput);
}

TEST_CASE("no witness when every candidate leaves the gap at 1") {
  // Orthogonal states and a net holding only the identity.
  const TruncationLevel level(1);
  UnitaryNet net;
  net.level = level;
  net.elements.push_back(ComplexMatrix::Identity(2, 2));
  const TestElementNet tests = TestElementNet::standard(level, 1);
  const VectorState a(UnitVector::basis(2, 0), level);
  const VectorState b(UnitVector::basis(2, 1), level);
  CHECK_FALSE(witness_search(a, b, net, tests));
}

TEST_CASE("distance_bound_check") {
  Rng rng(71);
  const VectorState psi(rng.unit_vector(4));
  const ComplexMatrix u = rng.haar_unitary(4);
  const auto exact = distance_bound_check(pullback(psi, u), psi, u);
  CHECK(exact.norm_distance < 1e-12);
  CHECK(exact.below2);

  const VectorState e0(UnitVector::basis(2, 0));
  const VectorState e1(UnitVector::basis(2, 1));
  const auto ortho = distance_bound_check(e0, e1, ComplexMatrix::Identity(2, 2));
  CHECK(ortho.norm_distance == doctest::Approx(2.0));
  CHECK_FALSE(ortho.below2);
  CHECK_THROWS_AS(distance_bound_check(e0, e1, 2.0 * ComplexMatrix::Identity(2, 2)),
                  InvalidInput);

  for (int trial = 0; trial < 20; ++trial) {
    const VectorState a(rng.unit_vector(4));
    const VectorState b(rng.unit_vector(4));
    const double c = std::abs(overlap(a.vector(), b.vector()));
    const auto d = distance_bound_check(a, b, ComplexMatrix::Identity(4, 4));
    CHECK(std::abs(d.norm_distance - 2 * std::sqrt(1 - c * c)) < 1e-8);
  }
}

TEST_CASE("perturb_unitary hits the requested distance") {
  Rng rng(72);
  const ComplexMatrix v = rng.haar_unitary(4);
  for (double delta : {0.0, 0.1, 0.25, 0.49, 1.5}) {
    const ComplexMatrix u = perturb_unitary(v, delta, 9);
    CHECK(is_unitary(u, 1e-9));
    CHECK(std::abs(operator_norm(u - v) - delta) < 1e-10);
  }
  CHECK_THROWS_AS(perturb_unitary(v, 2.0, 1), DomainError);
}
