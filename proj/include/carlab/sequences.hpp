#pragma once

// Angle sequences and the finite-prefix diagnostics for the square-summable
// criterion: partial sums of squared differences, partial products of
// cosines, and partial sums of sin^2 of half differences.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace carlab {

/// Finite list of angles, each strictly inside (-pi/2, pi/2).
class AngleSequence {
public:
  explicit AngleSequence(std::vector<double> values, std::string tag = {});

  /// Builds `length` terms (1-based n) from a generator descriptor:
  ///   zero | harmonic | invsqrt | power:<p> | random:<scale>:<seed> | file:<path>
  /// A file supplies its own terms; `length` then truncates and must not exceed them.
  static AngleSequence from_descriptor(const std::string& descriptor, std::size_t length);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::string& tag() const { return tag_; }

  /// First `n` terms.
  AngleSequence prefix(std::size_t n) const;

private:
  std::vector<double> values_;
  std::string tag_;
};

/// Reads one decimal angle per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, std::span<const double> values);

/// S_k = sum_{n<=k} (alpha_n - beta_n)^2, k = 1..len.
std::vector<double> l2_partial_sums(const AngleSequence& alpha, const AngleSequence& beta);

/// sum_{n<=k} sin^2((alpha_n - beta_n)/2), k = 1..len.
std::vector<double> half_angle_partial_sums(const AngleSequence& alpha,
                                            const AngleSequence& beta);

/// P_k = prod_{j=from}^{k} cos(alpha_j - beta_j) for k = from..to (1-based),
/// accumulated as a log-magnitude plus a sign.
std::vector<double> overlap_partial_products(const AngleSequence& alpha,
                                             const AngleSequence& beta, std::size_t from,
                                             std::size_t to);

/// Partial products prod_{j<=k} t_j accumulated in log space.
std::vector<double> partial_products(std::span<const double> factors);

/// Weierstrass bounds on prod (1 - a_j), 0 <= a_j <= 1:
///   1 - sum a_j  <=  prod (1 - a_j)  <=  exp(-sum a_j).
struct ProductBounds {
  double lower;
  double upper;
};
ProductBounds weierstrass_bounds(std::span<const double> defects);

enum class Trend { equivalent, inequivalent, inconclusive };
const char* to_string(Trend t);

/// Finite thresholds standing in for the infinite dichotomy.
struct WindowPolicy {
  std::size_t min_length = 16;
  double tail_fraction = 0.25;  // window: last quarter of the prefix
  double sum_epsilon = 1e-6;    // S_K tail growth threshold
  double product_delta = 0.05;  // |P_K| threshold
};

struct PairDiagnostics {
  std::size_t length;
  double l2_sum;             // S_K
  double l2_tail_growth;     // S_K - S_{K - window}
  double half_angle_sum;     // sum sin^2(theta/2)
  double half_angle_tail_growth;
  double product;            // P_K (signed)
  Trend trend;
};

/// Equivalent-trend: both sums settle (tail growth below sum_epsilon, the
/// half-angle sum below sum_epsilon / 4) and |P_K| > product_delta.
/// Inequivalent-trend: both sums still grow past those thresholds and
/// |P_K| < product_delta.  Anything else is inconclusive.
PairDiagnostics classify_pair(const AngleSequence& alpha, const AngleSequence& beta,
                              const WindowPolicy& policy = {});

} // namespace carlab
