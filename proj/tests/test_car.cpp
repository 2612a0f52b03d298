#include "doctest.h"

#include <cmath>
#include <vector>

#include "carlab/car.hpp"
#include "carlab/random.hpp"

using namespace carlab;

TEST_CASE("truncation levels") {
  CHECK(TruncationLevel(0).dim() == 1);
  CHECK(TruncationLevel(12).dim() == 4096);
  CHECK_THROWS_AS(TruncationLevel(13), LevelError);
  CHECK_THROWS_AS(TruncationLevel(-1), LevelError);
  CHECK(level_of_dim(8).n() == 3);
  CHECK_THROWS(level_of_dim(6));
}

TEST_CASE("embed places a in the leading factor") {
  Rng rng(4);
  const ComplexMatrix a = rng.contraction(2);
  const ComplexMatrix big = embed(a, TruncationLevel(3));
  CHECK(big.rows() == 8);
  CHECK((big - kron(a, ComplexMatrix::Identity(4, 4))).norm() < 1e-15);
  CHECK((embed(a, TruncationLevel(1)) - a).norm() == 0.0);
  CHECK_THROWS_AS(embed(ComplexMatrix::Identity(4, 4), TruncationLevel(1)), LevelError);
  CHECK_THROWS(embed(ComplexMatrix::Identity(3, 3), TruncationLevel(2)));
}

TEST_CASE("angle vectors") {
  const UnitVector v = angle_vector(0.3);
  CHECK(v[0].real() == doctest::Approx(std::cos(0.3)));
  CHECK(v[1].real() == doctest::Approx(std::sin(0.3)));
  CHECK_THROWS_AS(angle_vector(std::acos(-1.0) / 2), DomainError);
  CHECK_THROWS_AS(angle_vector(-2.0), DomainError);
}

TEST_CASE("product vector overlap factorizes") {
  const std::vector<double> a{0.1, 0.2};
  const std::vector<double> b{0.3, 0.5};
  const cplx got = overlap(product_vector(a), product_vector(b));
  CHECK(std::abs(got - 0.93629336358419924) < 1e-12);
  CHECK(std::abs(got - std::cos(0.2) * std::cos(0.3)) < 1e-12);
}

TEST_CASE("product vector ranges and caps") {
  const std::vector<double> a(13, 0.1);
  CHECK(product_vector(a, 2, 4).dim() == 8);
  CHECK_THROWS(product_vector(a, 3, 2));
  CHECK_THROWS(product_vector(a, 0, 2));
  CHECK_THROWS(product_vector(a));
}

TEST_CASE("overlap factorization property up to 12 factors") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 1 + trial % 12;
    std::vector<double> a, b;
    double want = 1.0;
    for (int j = 0; j < k; ++j) {
      a.push_back(rng.uniform(-1.5, 1.5));
      b.push_back(rng.uniform(-1.5, 1.5));
      want *= std::cos(a.back() - b.back());
    }
    CHECK(std::abs(overlap(product_vector(a), product_vector(b)) - want) < 1e-10);
  }
}
