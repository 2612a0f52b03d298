#pragma once

// Batch experiments behind the command-line runner.  Each returns a Report
// that serializes to JSON or CSV; identical configs give identical bytes.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "carlab/fsigma.hpp"
#include "carlab/reduction.hpp"

namespace carlab {

using Json = nlohmann::ordered_json;

const char* version();

struct Report {
  std::string experiment;
  Json config;
  std::vector<Json> rows;
  Json summary;
};

/// {experiment, version, config, rows, summary}; floats with 17 significant digits.
std::string to_json_text(const Report& r);
/// `#` lines carrying experiment, version, config and summary, then a header
/// row of the row keys and one line per row.
std::string to_csv_text(const Report& r);

struct OverlapDistanceConfig {
  int dim = 2;
  int trials = 100;
  std::uint64_t seed = 1;
  long budget = 10000;
  bool phase_aligned = false; // rotate eta so that <xi|eta> >= 0
  double tolerance = 1e-4;
};

/// Closed forms for inf ||I - u|| with u xi = eta against the search oracle.
Report run_overlap_distance(const OverlapDistanceConfig& c);

struct ProductConstantConfig {
  int pairs = 50;
  int factors = 2;
  std::uint64_t seed = 1;
  long budget = 50000;
  double tolerance = 1e-3;
};

/// Product vector states in (C^2)^{factors}: sqrt(2(1 - p)) and 2 sqrt(2(1 - p))
/// against the state-equality oracle.
Report run_product_constant(const ProductConstantConfig& c);

struct ReduceConfig {
  std::string alpha = "power:2";
  std::string beta = "zero";
  int levels = 8;
  std::size_t length = 10000; // terms used for the trend classification
  PhasePolicy policy = PhasePolicy::none;
  std::uint64_t seed = 1;
  int test_count = 25;
  WindowPolicy window;
};

Report run_reduce(const ReduceConfig& c);

struct CauchyGapConfig {
  std::string alpha = "harmonic";
  std::string beta = "zero";
  int levels = 6;
  int max_span = 6;
  PhasePolicy policy = PhasePolicy::none;
  double tolerance = 1e-8;
};

/// Throws InvariantViolation if a measured gap departs from the sign-pattern
/// value by more than the tolerance.
Report run_cauchy_gaps(const CauchyGapConfig& c);

struct SeparationConfig {
  std::string alpha = "invsqrt";
  std::string beta = "zero";
  int start = 1;
  int levels = 10;
  std::size_t length = 4096; // terms scanned for the threshold crossing
  double threshold = 1.9;
};

Report run_separation(const SeparationConfig& c);

/// First n >= start with 2 sqrt(1 - P_n^2) > threshold, P_n the product of
/// cos(alpha_j - beta_j) over start..n; 0 if none within the sequences.
int distance_crossing(const AngleSequence& alpha, const AngleSequence& beta, int start,
                      double threshold);

struct WitnessSearchConfig {
  int level = 1;
  double epsilon = 0.4;
  int trials = 50;
  std::uint64_t seed = 1;
  std::string net = "auto"; // auto | exhaustive | random
  std::size_t net_size = 4096;
  int test_count = 25;
  std::vector<double> deltas{0.1, 0.25, 0.49};
};

Report run_witness_search(const WitnessSearchConfig& c);

enum class ProductFamily { geometric, telescoping };
const char* to_string(ProductFamily f);
ProductFamily product_family_from_string(const std::string& s);

struct ProductTestConfig {
  ProductFamily family = ProductFamily::geometric;
  int terms = 60;
};

/// Partial products of t_j = 1 - 2^-j or t_j = 1 - 1/(j + 1) with Weierstrass bounds.
Report run_product_test(const ProductTestConfig& c);

} // namespace carlab
