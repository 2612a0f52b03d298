#pragma once

// The reduction map alpha -> tensor of omega_(cos alpha_n, sin alpha_n),
// realized on finite truncations, together with the intertwining unitaries
// v_n = u_1 (x) ... (x) u_n and the separation experiment.

#include <cstdint>
#include <span>
#include <vector>

#include "carlab/sequences.hpp"
#include "carlab/states.hpp"

namespace carlab {

/// Product state of the first n angles on M_{2^n}.
VectorState phi_truncate(const AngleSequence& alpha, TruncationLevel n);

enum class PhasePolicy {
  none,           // u_n = plane rotation by beta_n - alpha_n
  eigenvalue_one, // u_n = exp(i theta_n) * rotation; eigenvalues {1, exp(2 i theta_n)}
};

const char* to_string(PhasePolicy p);
PhasePolicy phase_policy_from_string(const std::string& s);

/// 2x2 unitary taking (cos alpha, sin alpha) to (cos beta, sin beta), up to
/// the phase the policy attaches.
ComplexMatrix step_unitary(double alpha, double beta, PhasePolicy policy = PhasePolicy::none);

/// Eigenphases of step_unitary(alpha, beta, policy).
std::pair<double, double> step_eigenphases(double alpha, double beta, PhasePolicy policy);

struct ChainLevel {
  int n;
  ComplexMatrix v;              // v_n, dimension 2^n
  double gap_to_prev;           // ||v_{n-1} (x) I - v_n|| = ||I_2 - u_n||
  double claimed_bound;           // sqrt(2(1 - |cos(alpha_n - beta_n)|))
  double exact_eigenphase_norm; // sign-pattern value for ||I_2 - u_n||
  double intertwining_defect;   // | |<eta^(n)| v_n xi^(n)>| - 1 | or ||v_n xi - eta||
};

class IntertwinerChain {
public:
  IntertwinerChain(AngleSequence alpha, AngleSequence beta, PhasePolicy policy,
                   std::vector<ChainLevel> levels);

  int depth() const { return static_cast<int>(levels_.size()); }
  /// v_n for 1 <= n <= depth(); n = 0 gives the 1x1 identity.
  ComplexMatrix v(int n) const;
  const ChainLevel& level(int n) const;
  const std::vector<ChainLevel>& levels() const { return levels_; }
  const AngleSequence& alpha() const { return alpha_; }
  const AngleSequence& beta() const { return beta_; }
  PhasePolicy policy() const { return policy_; }

private:
  AngleSequence alpha_;
  AngleSequence beta_;
  PhasePolicy policy_;
  std::vector<ChainLevel> levels_;
};

/// Builds v_1..v_N.  Throws InvariantViolation if some v_n fails to map the
/// level-n product vector of alpha onto that of beta (up to phase under
/// eigenvalue_one) within 1e-9, or is not unitary within 1e-9.
IntertwinerChain build_intertwiner_chain(const AngleSequence& alpha, const AngleSequence& beta,
                                         int depth, PhasePolicy policy = PhasePolicy::none);

/// max_a |Phi_n(alpha)(a (x) I) - Phi_n(beta)(v_n (a (x) I) v_n*)| over test
/// elements a in M_{2^m}, m <= n.
double intertwining_check(const IntertwinerChain& chain, int n,
                          std::span<const ComplexMatrix> test_set);

struct BlockGap {
  int m;
  int n;
  double measured;            // dense ||v_m (x) I - v_n||
  double spectral;            // sign-pattern formula over factors m+1..n
  double claimed_bound;         // sqrt(2(1 - prod_{j=max(m,1)}^{len} cos theta_j))
  double finite_bound;        // sqrt(2(1 - prod_{j=m+1}^{n} cos theta_j))
  bool exceeds_claimed_bound;   // measured > claimed_bound
};

BlockGap block_gap(const IntertwinerChain& chain, int m, int n);

/// All pairs 0 <= m < n <= depth with n - m <= max_span.
std::vector<BlockGap> cauchy_gap_table(const IntertwinerChain& chain, int max_span);

struct SeparationRow {
  int n;
  double overlap;          // prod_{j=m}^{n} cos(alpha_j - beta_j), from the vectors
  double product_overlap;  // the same product from the sequence diagnostics
  double state_distance;   // trace-norm distance of the tail product states
  double duality_distance; // 2 sqrt(1 - overlap^2)
  double witness_phi;      // omega_xi(P_xi - P_eta)
  double witness_psi;      // omega_eta(P_xi - P_eta)
  double witness_norm;
};

/// Tail products xi_n, eta_n over factors m..n for n = m..max_n.  Throws
/// InvariantViolation if the state distance and the duality formula differ
/// by more than 1e-8.
std::vector<SeparationRow> separation_experiment(const AngleSequence& alpha,
                                                 const AngleSequence& beta, int m, int max_n);

/// Seeded Hermitian contractions on M_{2^level} followed by all matrix units.
std::vector<ComplexMatrix> default_test_set(TruncationLevel level, std::uint64_t seed,
                                            int random_count = 25);

} // namespace carlab
