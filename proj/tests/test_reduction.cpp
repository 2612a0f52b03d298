#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "carlab/random.hpp"
#include "carlab/reduction.hpp"

using namespace carlab;

namespace {

AngleSequence seq(const char* d, std::size_t n) { return AngleSequence::from_descriptor(d, n); }

} // namespace

TEST_CASE("phi_truncate") {
  const auto a = seq("harmonic", 4);
  const VectorState one = phi_truncate(a, TruncationLevel(1));
  CHECK((one.vector().values() - angle_vector(1.0).values()).norm() < 1e-15);
  CHECK(phi_truncate(a, TruncationLevel(0)).dim() == 1);
  CHECK_THROWS_AS(phi_truncate(a, TruncationLevel(5)), InvalidInput);
}

TEST_CASE("truncated states depend only on the leading angles") {
  Rng rng(50);
  const auto a = seq("random:1.2:1", 6);
  std::vector<double> changed(a.values().begin(), a.values().end());
  changed[4] = 0.9;
  changed[5] = -0.4;
  const AngleSequence b(changed);
  const ComplexMatrix x = rng.contraction(8);
  for (int n = 3; n <= 6; ++n) {
    const TruncationLevel level(n);
    const ComplexMatrix big = embed(x, level);
    CHECK(std::abs(evaluate(phi_truncate(a, level), big) -
                   evaluate(phi_truncate(a, TruncationLevel(3)), x)) < 1e-13);
    if (n <= 4)
      CHECK(std::abs(evaluate(phi_truncate(a, level), big) -
                     evaluate(phi_truncate(b, level), big)) < 1e-13);
  }
}

TEST_CASE("phase policies") {
  CHECK(phase_policy_from_string("none") == PhasePolicy::none);
  CHECK(phase_policy_from_string("eigenvalue-one") == PhasePolicy::eigenvalue_one);
  CHECK_THROWS_AS(phase_policy_from_string("x"), InvalidInput);
  for (PhasePolicy p : {PhasePolicy::none, PhasePolicy::eigenvalue_one}) {
    const ComplexMatrix u = step_unitary(0.3, -0.5, p);
    CHECK(is_unitary(u));
    const ComplexVector image = u * angle_vector(0.3).values();
    CHECK(std::abs(std::abs(image.dot(angle_vector(-0.5).values())) - 1.0) < 1e-14);
    const auto [e1, e2] = step_eigenphases(0.3, -0.5, p);
    const Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
    const ComplexVector want{{std::polar(1.0, e1), std::polar(1.0, e2)}};
    for (Index k = 0; k < 2; ++k)
      CHECK((es.eigenvalues().array() - want(k)).abs().minCoeff() < 1e-12);
  }
}

TEST_CASE("single-step gap") {
  const double theta = 0.7;
  const auto chain = build_intertwiner_chain(AngleSequence({0.0}), AngleSequence({theta}), 1);
  const ChainLevel& l = chain.level(1);
  CHECK(std::abs(l.gap_to_prev - 2 * std::abs(std::sin(theta / 2))) < 1e-12);
  CHECK(std::abs(l.gap_to_prev - std::sqrt(2 * (1 - std::cos(theta)))) < 1e-12);
  CHECK(std::abs(l.exact_eigenphase_norm - l.gap_to_prev) < 1e-12);
  CHECK(l.intertwining_defect < 1e-15);
}

TEST_CASE("chain invariants") {
  for (PhasePolicy p : {PhasePolicy::none, PhasePolicy::eigenvalue_one}) {
    const auto a = seq("random:1.3:11", 8);
    const auto b = seq("random:1.3:12", 8);
    const auto chain = build_intertwiner_chain(a, b, 8, p);
    CHECK(chain.depth() == 8);
    CHECK(chain.v(0).rows() == 1);
    for (int n = 1; n <= 8; ++n) {
      const ChainLevel& l = chain.level(n);
      CHECK(is_unitary(l.v, 1e-9));
      CHECK(l.intertwining_defect < 1e-9);
      const Index d = l.v.rows();
      const double measured = operator_norm(embed(chain.v(n - 1), TruncationLevel(n)) - l.v);
      CHECK(std::abs(measured - l.gap_to_prev) < 1e-10);
      CHECK(std::abs(measured - l.exact_eigenphase_norm) < 1e-10);
      if (p == PhasePolicy::none) {
        const double theta = a[static_cast<std::size_t>(n - 1)] - b[static_cast<std::size_t>(n - 1)];
        CHECK(std::abs(l.gap_to_prev - std::sqrt(2 * (1 - std::cos(theta)))) < 1e-10);
      }
      (void)d;
    }
    CHECK_THROWS_AS(chain.level(9), LevelError);
    CHECK_THROWS_AS(chain.level(0), LevelError);
  }
  CHECK_THROWS(build_intertwiner_chain(seq("zero", 3), seq("zero", 4), 3));
  CHECK_THROWS(build_intertwiner_chain(seq("zero", 3), seq("zero", 3), 4));
  CHECK_THROWS_AS(build_intertwiner_chain(seq("zero", 13), seq("zero", 13), 13), LevelError);
}

TEST_CASE("intertwining identity") {
  Rng rng(60);
  const auto a = seq("random:1.4:21", 6);
  const auto b = seq("random:1.4:22", 6);
  const auto chain = build_intertwiner_chain(a, b, 6);
  std::vector<ComplexMatrix> tests{ComplexMatrix::Identity(4, 4)};
  CHECK(intertwining_check(chain, 6, tests) < 1e-14);
  tests.clear();
  for (int i = 0; i < 10; ++i)
    tests.push_back(rng.hermitian_contraction(4));
  CHECK(intertwining_check(chain, 6, tests) <= 1e-10);
  const auto units = default_test_set(TruncationLevel(3), 5, 50);
  CHECK(units.size() == 50 + 64);
  CHECK(intertwining_check(chain, 6, units) <= 1e-9);
  const std::vector<ComplexMatrix> too_big{ComplexMatrix::Identity(128, 128)};
  CHECK_THROWS(intertwining_check(chain, 6, too_big));
}

TEST_CASE("block gaps: harmonic against zero, six levels") {
  // Dense and spectral values frozen from an independent numpy computation;
  // bounds from a 40-digit evaluation.
  const auto chain = build_intertwiner_chain(seq("harmonic", 6), seq("zero", 6), 6);
  const BlockGap g06 = block_gap(chain, 0, 6);
  CHECK(std::abs(g06.measured - 1.8816116783477441) < 1e-10);
  CHECK(std::abs(g06.spectral - 1.8816116783477441) < 1e-10);
  CHECK(std::abs(g06.claimed_bound - 1.0774209228886576) < 1e-12);
  CHECK(std::abs(g06.finite_bound - 1.0774209228886576) < 1e-12);
  CHECK(g06.exceeds_claimed_bound);

  const BlockGap g25 = block_gap(chain, 2, 5);
  CHECK(std::abs(g25.measured - 0.7634588029398325) < 1e-10);
  CHECK(std::abs(g25.claimed_bound - 0.66847721902574034) < 1e-12);
  CHECK(std::abs(g25.finite_bound - 0.45314485503973671) < 1e-12);
  CHECK(g25.exceeds_claimed_bound);

  const BlockGap g56 = block_gap(chain, 5, 6);
  CHECK(std::abs(g56.measured - 0.16647383240062050) < 1e-10);
  CHECK(std::abs(g56.claimed_bound - 0.25889757735761429) < 1e-12);
  CHECK_FALSE(g56.exceeds_claimed_bound);

  CHECK_THROWS_AS(block_gap(chain, 3, 3), LevelError);
  CHECK_THROWS_AS(block_gap(chain, 0, 7), LevelError);
}

TEST_CASE("spectral formula matches dense gaps for spans up to six") {
  for (PhasePolicy p : {PhasePolicy::none, PhasePolicy::eigenvalue_one}) {
    const auto chain =
        build_intertwiner_chain(seq("random:1.5:31", 8), seq("random:1.5:32", 8), 8, p);
    const auto table = cauchy_gap_table(chain, 6);
    for (const BlockGap& g : table) {
      CHECK(g.n - g.m <= 6);
      CHECK(std::abs(g.measured - g.spectral) < 1e-8);
      CHECK(g.exceeds_claimed_bound == (g.measured > g.claimed_bound));
      if (p == PhasePolicy::none)
        CHECK(g.spectral >= g.finite_bound - 1e-12);
    }
  }
  const auto chain = build_intertwiner_chain(seq("zero", 3), seq("zero", 3), 3);
  CHECK(cauchy_gap_table(chain, 1).size() == 3);
  CHECK_THROWS(cauchy_gap_table(chain, 0));
}

TEST_CASE("separation experiment") {
  const auto z = seq("zero", 12);
  for (const auto& row : separation_experiment(z, z, 1, 12)) {
    CHECK(row.state_distance < 1e-12);
    CHECK(row.overlap == doctest::Approx(1.0));
  }

  const auto inv = seq("invsqrt", 12);
  const auto rows = separation_experiment(inv, z, 1, 12);
  REQUIRE(rows.size() == 12);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    CHECK(std::abs(r.state_distance - r.duality_distance) < 1e-8);
    CHECK(std::abs(r.overlap - r.product_overlap) < 1e-12);
    const double p2 = r.overlap * r.overlap;
    CHECK(std::abs(r.witness_phi - (1 - p2)) < 1e-10);
    CHECK(std::abs(r.witness_psi - (p2 - 1)) < 1e-10);
    if (k > 0) {
      CHECK(r.overlap < rows[k - 1].overlap);
      CHECK(r.state_distance > rows[k - 1].state_distance);
    }
  }
  CHECK(std::abs(rows[9].state_distance - 1.9613113179610074) < 1e-10);

  const double edge = std::numbers::pi / 2 - 1e-6;
  const auto near = separation_experiment(AngleSequence({edge}), AngleSequence({0.0}), 1, 1);
  CHECK(near[0].state_distance >= 2 - 1e-5);

  const auto long_z = seq("zero", 20);
  CHECK_THROWS_AS(separation_experiment(long_z, long_z, 1, 13), SizeLimitError);
  CHECK_NOTHROW(separation_experiment(long_z, long_z, 8, 19));
  CHECK_THROWS(separation_experiment(long_z, long_z, 3, 2));
}
