#include "carlab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "carlab/random.hpp"

namespace carlab {

VectorState phi_truncate(const AngleSequence& alpha, TruncationLevel n) {
  if (alpha.size() < static_cast<std::size_t>(n.n()))
    throw InvalidInput("phi_truncate: sequence has " + std::to_string(alpha.size()) +
                       " terms, level " + std::to_string(n.n()) + " requested");
  if (n.n() == 0)
    return VectorState(UnitVector::basis(1, 0), n);
  return VectorState(product_vector(alpha.values(), 1, n.n()), n);
}

const char* to_string(PhasePolicy p) {
  return p == PhasePolicy::none ? "none" : "eigenvalue-one";
}

PhasePolicy phase_policy_from_string(const std::string& s) {
  if (s == "none")
    return PhasePolicy::none;
  if (s == "eigenvalue-one")
    return PhasePolicy::eigenvalue_one;
  throw InvalidInput("unknown phase policy '" + s + "'");
}

ComplexMatrix step_unitary(double alpha, double beta, PhasePolicy policy) {
  const double theta = beta - alpha;
  ComplexMatrix u = plane_rotation(theta);
  if (policy == PhasePolicy::eigenvalue_one)
    u *= std::polar(1.0, theta);
  return u;
}

std::pair<double, double> step_eigenphases(double alpha, double beta, PhasePolicy policy) {
  const double theta = beta - alpha;
  if (policy == PhasePolicy::eigenvalue_one)
    return {0.0, 2.0 * theta};
  return {theta, -theta};
}

IntertwinerChain::IntertwinerChain(AngleSequence alpha, AngleSequence beta, PhasePolicy policy,
                                   std::vector<ChainLevel> levels)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), policy_(policy),
      levels_(std::move(levels)) {}

ComplexMatrix IntertwinerChain::v(int n) const {
  if (n == 0)
    return ComplexMatrix::Identity(1, 1);
  return level(n).v;
}

const ChainLevel& IntertwinerChain::level(int n) const {
  if (n < 1 || n > depth())
    throw LevelError("chain level " + std::to_string(n) + " outside [1, " +
                     std::to_string(depth()) + "]");
  return levels_[static_cast<std::size_t>(n - 1)];
}

IntertwinerChain build_intertwiner_chain(const AngleSequence& alpha, const AngleSequence& beta,
                                         int depth, PhasePolicy policy) {
  if (alpha.size() != beta.size())
    throw InvalidInput("build_intertwiner_chain: sequences differ in length");
  if (depth < 1 || static_cast<std::size_t>(depth) > alpha.size())
    throw InvalidInput("build_intertwiner_chain: depth " + std::to_string(depth) +
                       " needs 1 <= depth <= sequence length " + std::to_string(alpha.size()));
  (void)TruncationLevel(depth); // enforces the level cap

  std::vector<ChainLevel> levels;
  levels.reserve(static_cast<std::size_t>(depth));
  ComplexMatrix v = ComplexMatrix::Identity(1, 1);
  constexpr double tol = 1e-9;
  for (int n = 1; n <= depth; ++n) {
    const double a = alpha[static_cast<std::size_t>(n - 1)];
    const double b = beta[static_cast<std::size_t>(n - 1)];
    const ComplexMatrix u = step_unitary(a, b, policy);
    if (!is_unitary(u, tol))
      throw InvariantViolation("step unitary " + std::to_string(n) + " is not unitary");
    v = kron(v, u);

    ChainLevel lvl;
    lvl.n = n;
    lvl.gap_to_prev = operator_norm(ComplexMatrix::Identity(2, 2) - u);
    lvl.claimed_bound = std::sqrt(2.0 * (1.0 - std::abs(std::cos(a - b))));
    const std::pair<double, double> phases[] = {step_eigenphases(a, b, policy)};
    lvl.exact_eigenphase_norm = eigenphase_gap(phases);

    const ComplexVector xi = product_vector(alpha.values(), 1, n).values();
    const ComplexVector eta = product_vector(beta.values(), 1, n).values();
    const ComplexVector image = v * xi;
    lvl.intertwining_defect = policy == PhasePolicy::none
                                  ? (image - eta).norm()
                                  : std::abs(std::abs(eta.dot(image)) - 1.0);
    if (lvl.intertwining_defect > tol)
      throw InvariantViolation("v_" + std::to_string(n) +
                               " does not carry the alpha product vector to the beta one");
    lvl.v = v;
    levels.push_back(std::move(lvl));
  }
  return IntertwinerChain(alpha, beta, policy, std::move(levels));
}

double intertwining_check(const IntertwinerChain& chain, int n,
                          std::span<const ComplexMatrix> test_set) {
  const TruncationLevel level(n);
  const ComplexMatrix& v = chain.level(n).v;
  const VectorState phi = phi_truncate(chain.alpha(), level);
  const VectorState psi = phi_truncate(chain.beta(), level);
  // psi(v a v*) = <a w | w> with w = v* eta.
  const ComplexVector& xi = phi.vector().values();
  const ComplexVector w = v.adjoint() * psi.vector().values();
  double worst = 0.0;
  for (const ComplexMatrix& a : test_set) {
    const ComplexMatrix big = embed(a, level);
    const cplx lhs = evaluate(phi, big);
    const cplx rhs = w.dot(big * w);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

BlockGap block_gap(const IntertwinerChain& chain, int m, int n) {
  if (m < 0 || n <= m || n > chain.depth())
    throw LevelError("block_gap: need 0 <= m < n <= depth");
  BlockGap g;
  g.m = m;
  g.n = n;
  const TruncationLevel level(n);
  g.measured = operator_norm(embed(chain.v(m), level) - chain.v(n));

  std::vector<std::pair<double, double>> phases;
  double finite = 1.0;
  for (int j = m + 1; j <= n; ++j) {
    const double a = chain.alpha()[static_cast<std::size_t>(j - 1)];
    const double b = chain.beta()[static_cast<std::size_t>(j - 1)];
    phases.push_back(step_eigenphases(a, b, chain.policy()));
    finite *= std::cos(a - b);
  }
  g.spectral = eigenphase_gap(phases);
  g.finite_bound = std::sqrt(std::max(0.0, 2.0 * (1.0 - finite)));

  // The displayed estimate runs the product from j = m to infinity; the
  // available sequence is the finite stand-in for the tail.
  const auto tail = overlap_partial_products(chain.alpha(), chain.beta(),
                                             static_cast<std::size_t>(std::max(m, 1)),
                                             chain.alpha().size());
  g.claimed_bound = std::sqrt(std::max(0.0, 2.0 * (1.0 - tail.back())));
  g.exceeds_claimed_bound = g.measured > g.claimed_bound;
  return g;
}

std::vector<BlockGap> cauchy_gap_table(const IntertwinerChain& chain, int max_span) {
  if (max_span < 1)
    throw InvalidInput("cauchy_gap_table: max_span must be >= 1");
  std::vector<BlockGap> out;
  for (int n = 1; n <= chain.depth(); ++n)
    for (int m = std::max(0, n - max_span); m < n; ++m)
      out.push_back(block_gap(chain, m, n));
  return out;
}

std::vector<SeparationRow> separation_experiment(const AngleSequence& alpha,
                                                 const AngleSequence& beta, int m, int max_n) {
  if (alpha.size() != beta.size())
    throw InvalidInput("separation_experiment: sequences differ in length");
  if (m < 1 || max_n < m)
    throw InvalidInput("separation_experiment: need 1 <= m <= max_n");
  if (max_n - m + 1 > max_level)
    throw SizeLimitError("separation_experiment: more than " + std::to_string(max_level) +
                         " tail factors");
  if (static_cast<std::size_t>(max_n) > alpha.size())
    throw InvalidInput("separation_experiment: sequences shorter than max_n");

  const auto products = overlap_partial_products(alpha, beta, static_cast<std::size_t>(m),
                                                 static_cast<std::size_t>(max_n));
  std::vector<SeparationRow> rows;
  for (int n = m; n <= max_n; ++n) {
    const UnitVector xi = product_vector(alpha.values(), m, n);
    const UnitVector eta = product_vector(beta.values(), m, n);
    SeparationRow row;
    row.n = n;
    row.overlap = overlap(xi, eta).real();
    row.product_overlap = products[static_cast<std::size_t>(n - m)];
    row.state_distance = state_distance(VectorState(xi), VectorState(eta));
    row.duality_distance = 2.0 * std::sqrt(std::max(0.0, 1.0 - row.overlap * row.overlap));
    const WitnessValues w = separation_values(xi, eta);
    row.witness_phi = w.value_phi;
    row.witness_psi = w.value_psi;
    row.witness_norm = w.norm;
    if (std::abs(row.state_distance - row.duality_distance) > 1e-8)
      throw InvariantViolation("separation: state distance departs from 2 sqrt(1 - P^2) at n = " +
                               std::to_string(n));
    rows.push_back(row);
  }
  return rows;
}

std::vector<ComplexMatrix> default_test_set(TruncationLevel level, std::uint64_t seed,
                                            int random_count) {
  Rng rng(seed);
  const Index d = level.dim();
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(random_count) + static_cast<std::size_t>(d * d));
  for (int i = 0; i < random_count; ++i)
    out.push_back(rng.hermitian_contraction(d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1.0;
      out.push_back(std::move(e));
    }
  return out;
}

} // namespace carlab
