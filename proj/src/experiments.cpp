#include "carlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>

#include "carlab/orbit.hpp"
#include "carlab/random.hpp"

namespace carlab {

const char* version() { return CARLAB_VERSION; }

namespace {

std::string number_text(double x) {
  if (!std::isfinite(x))
    return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_compact(std::ostringstream& out, const Json& j) {
  switch (j.type()) {
  case Json::value_t::object: {
    out << '{';
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first)
        out << ',';
      first = false;
      out << Json(key).dump() << ':';
      write_compact(out, value);
    }
    out << '}';
    break;
  }
  case Json::value_t::array: {
    out << '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i)
        out << ',';
      write_compact(out, j[i]);
    }
    out << ']';
    break;
  }
  case Json::value_t::number_float:
    out << number_text(j.get<double>());
    break;
  default:
    out << j.dump();
  }
}

std::string compact(const Json& j) {
  std::ostringstream out;
  write_compact(out, j);
  return out.str();
}

std::string csv_cell(const Json& j) {
  switch (j.type()) {
  case Json::value_t::null:
    return "";
  case Json::value_t::string: {
    const std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos)
      return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"')
        quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }
  case Json::value_t::number_float:
    return std::isfinite(j.get<double>()) ? number_text(j.get<double>()) : "";
  default:
    return compact(j);
  }
}

AngleSequence sequence(const std::string& descriptor, std::size_t length) {
  return AngleSequence::from_descriptor(descriptor, length);
}

void require(bool ok, const std::string& message) {
  if (!ok)
    throw InvalidInput(message);
}

void require_levels(int levels, int lowest = 1) {
  require(levels >= lowest, "levels must be >= " + std::to_string(lowest));
  if (levels > max_level)
    throw SizeLimitError("level " + std::to_string(levels) + " exceeds the cap of " +
                         std::to_string(max_level));
}

} // namespace

std::string to_json_text(const Report& r) {
  std::ostringstream out;
  out << "{\n  \"experiment\": " << Json(r.experiment).dump() << ",\n  \"version\": "
      << Json(version()).dump() << ",\n  \"config\": " << compact(r.config)
      << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    out << (i ? ",\n    " : "\n    ") << compact(r.rows[i]);
  out << (r.rows.empty() ? "]" : "\n  ]") << ",\n  \"summary\": " << compact(r.summary)
      << "\n}\n";
  return out.str();
}

std::string to_csv_text(const Report& r) {
  std::ostringstream out;
  out << "# experiment: " << r.experiment << "\n# version: " << version()
      << "\n# config: " << compact(r.config) << "\n# summary: " << compact(r.summary) << '\n';
  if (r.rows.empty())
    return out.str();
  std::vector<std::string> keys;
  for (const auto& item : r.rows.front().items())
    keys.push_back(item.key());
  for (std::size_t k = 0; k < keys.size(); ++k)
    out << (k ? "," : "") << keys[k];
  out << '\n';
  for (const Json& row : r.rows) {
    for (std::size_t k = 0; k < keys.size(); ++k)
      out << (k ? "," : "") << (row.contains(keys[k]) ? csv_cell(row[keys[k]]) : "");
    out << '\n';
  }
  return out.str();
}

Report run_overlap_distance(const OverlapDistanceConfig& c) {
  require(c.dim >= 2 && c.dim <= 4, "dim must lie in [2, 4]");
  require(c.trials >= 1, "trials must be >= 1");
  require(c.budget >= 1000, "budget must be >= 1000");
  require(c.tolerance > 0, "tolerance must be positive");

  Report r;
  r.experiment = "lemma1-verify";
  r.config = {{"dim", c.dim},         {"trials", c.trials},
              {"seed", c.seed},       {"budget", c.budget},
              {"phase_aligned", c.phase_aligned}, {"tolerance", c.tolerance}};
  double max_error = 0.0;
  double max_exact_error = 0.0;
  for (int i = 0; i < c.trials; ++i) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(i)));
    const UnitVector xi = rng.unit_vector(c.dim);
    UnitVector eta = rng.unit_vector(c.dim);
    if (c.phase_aligned) {
      const cplx t = overlap(xi, eta);
      if (std::abs(t) > 0.0)
        eta = UnitVector::normalized(eta.values() * std::conj(t) / std::abs(t));
    }
    const std::uint64_t oracle_seed = rng.engine()();
    const OverlapReport closed = min_distance_closed_form(xi, eta);
    const OracleResult oracle =
        min_distance_search(xi, eta, Constraint::exact_vector, c.budget, oracle_seed);
    const double error = std::abs(closed.closed_form_distance - oracle.value);
    const double exact_error = std::abs(closed.exact_constraint_distance - oracle.value);
    max_error = std::max(max_error, error);
    max_exact_error = std::max(max_exact_error, exact_error);
    r.rows.push_back({{"trial", i},
                      {"overlap_re", closed.overlap.real()},
                      {"overlap_im", closed.overlap.imag()},
                      {"abs_overlap", closed.abs_overlap},
                      {"closed_form", closed.closed_form_distance},
                      {"exact_form", closed.exact_constraint_distance},
                      {"oracle", oracle.value},
                      {"abs_error", error},
                      {"exact_error", exact_error}});
  }
  r.summary = {{"max_abs_error", max_error},
               {"max_exact_error", max_exact_error},
               {"closed_form_within_tolerance", max_error <= c.tolerance},
               {"exact_form_within_tolerance", max_exact_error <= c.tolerance}};
  return r;
}

Report run_product_constant(const ProductConstantConfig& c) {
  require(c.pairs >= 1, "pairs must be >= 1");
  require(c.factors == 1 || c.factors == 2, "factors must be 1 or 2");
  require(c.budget >= 1000, "budget must be >= 1000");
  require(c.tolerance > 0, "tolerance must be positive");

  Report r;
  r.experiment = "lemma2-adjudicate";
  r.config = {{"pairs", c.pairs},   {"factors", c.factors},     {"seed", c.seed},
              {"budget", c.budget}, {"tolerance", c.tolerance}};
  double max_one = 0.0;
  double min_doubled = std::numeric_limits<double>::infinity();
  double max_doubled = 0.0;
  for (int i = 0; i < c.pairs; ++i) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(i)));
    std::vector<UnitVector> xis;
    std::vector<UnitVector> etas;
    for (int f = 0; f < c.factors; ++f) {
      xis.push_back(rng.unit_vector(2));
      etas.push_back(rng.unit_vector(2));
    }
    const std::uint64_t oracle_seed = rng.engine()();
    const ProductDistance closed = product_min_distance(xis, etas);
    const OracleResult oracle =
        min_distance_search(tensor_product(xis), tensor_product(etas),
                            Constraint::state_equality, c.budget, oracle_seed);
    const double dev_one = std::abs(oracle.value - closed.constant_one);
    const double dev_doubled = std::abs(oracle.value - closed.doubled_constant);
    max_one = std::max(max_one, dev_one);
    min_doubled = std::min(min_doubled, dev_doubled);
    max_doubled = std::max(max_doubled, dev_doubled);
    r.rows.push_back({{"pair", i},
                      {"product_overlap", closed.product_overlap},
                      {"constant_one", closed.constant_one},
                      {"doubled_constant", closed.doubled_constant},
                      {"oracle", oracle.value},
                      {"deviation_constant_one", dev_one},
                      {"deviation_doubled", dev_doubled}});
  }
  const bool one_matches = max_one <= c.tolerance;
  const bool doubled_matches = max_doubled <= c.tolerance;
  r.summary = {{"max_deviation_constant_one", max_one},
               {"min_deviation_doubled", min_doubled},
               {"max_deviation_doubled", max_doubled},
               {"constant_one_matches", one_matches},
               {"doubled_matches", doubled_matches},
               {"verdict", one_matches && !doubled_matches ? "constant-one"
                           : doubled_matches && !one_matches ? "doubled"
                                                             : "undecided"}};
  return r;
}

Report run_reduce(const ReduceConfig& c) {
  require_levels(c.levels);
  require(c.test_count >= 0, "test count must be >= 0");
  const std::size_t length = std::max(c.length, static_cast<std::size_t>(c.levels));
  const AngleSequence alpha = sequence(c.alpha, length);
  const AngleSequence beta = sequence(c.beta, length);

  Report r;
  r.experiment = "reduce";
  r.config = {{"alpha", c.alpha},
              {"beta", c.beta},
              {"levels", c.levels},
              {"length", length},
              {"phase_policy", to_string(c.policy)},
              {"seed", c.seed},
              {"test_count", c.test_count},
              {"window",
               {{"min_length", c.window.min_length},
                {"tail_fraction", c.window.tail_fraction},
                {"sum_epsilon", c.window.sum_epsilon},
                {"product_delta", c.window.product_delta}}}};

  const IntertwinerChain chain =
      build_intertwiner_chain(alpha.prefix(static_cast<std::size_t>(c.levels)),
                              beta.prefix(static_cast<std::size_t>(c.levels)), c.levels,
                              c.policy);
  const auto products = overlap_partial_products(alpha, beta, 1, static_cast<std::size_t>(c.levels));
  double max_gap = 0.0;
  for (int n = 1; n <= c.levels; ++n) {
    const ChainLevel& lvl = chain.level(n);
    const TruncationLevel level(n);
    const int m = std::min((n + 1) / 2, 3);
    const auto tests = default_test_set(TruncationLevel(m),
                                        trial_seed(c.seed, static_cast<std::uint64_t>(n)),
                                        c.test_count);
    const double gap = intertwining_check(chain, n, tests);
    max_gap = std::max(max_gap, gap);
    const double distance =
        state_distance(phi_truncate(alpha, level), phi_truncate(beta, level));
    r.rows.push_back({{"n", n},
                      {"alpha", alpha[static_cast<std::size_t>(n - 1)]},
                      {"beta", beta[static_cast<std::size_t>(n - 1)]},
                      {"gap_to_prev", lvl.gap_to_prev},
                      {"claimed_bound", lvl.claimed_bound},
                      {"exact_eigenphase_norm", lvl.exact_eigenphase_norm},
                      {"overlap_product", products[static_cast<std::size_t>(n - 1)]},
                      {"state_distance", distance},
                      {"intertwining_gap", gap}});
  }
  if (max_gap > 1e-9)
    throw InvariantViolation("intertwining gap " + number_text(max_gap) + " exceeds 1e-9");

  const PairDiagnostics d = classify_pair(alpha, beta, c.window);
  r.summary = {{"max_intertwining_gap", max_gap},
               {"length", d.length},
               {"l2_sum", d.l2_sum},
               {"l2_tail_growth", d.l2_tail_growth},
               {"half_angle_sum", d.half_angle_sum},
               {"half_angle_tail_growth", d.half_angle_tail_growth},
               {"product", d.product},
               {"classification", to_string(d.trend)}};
  return r;
}

Report run_cauchy_gaps(const CauchyGapConfig& c) {
  require_levels(c.levels);
  require(c.max_span >= 1, "max span must be >= 1");
  require(c.tolerance > 0, "tolerance must be positive");
  const std::size_t length = static_cast<std::size_t>(c.levels);
  const AngleSequence alpha = sequence(c.alpha, length);
  const AngleSequence beta = sequence(c.beta, length);

  Report r;
  r.experiment = "cauchy-gaps";
  r.config = {{"alpha", c.alpha},         {"beta", c.beta},
              {"levels", c.levels},       {"max_span", c.max_span},
              {"phase_policy", to_string(c.policy)}, {"tolerance", c.tolerance}};

  const IntertwinerChain chain = build_intertwiner_chain(alpha, beta, c.levels, c.policy);
  double max_error = 0.0;
  Json flagged = Json::array();
  for (const BlockGap& g : cauchy_gap_table(chain, c.max_span)) {
    const double error = std::abs(g.measured - g.spectral);
    max_error = std::max(max_error, error);
    if (g.exceeds_claimed_bound)
      flagged.push_back({{"m", g.m}, {"n", g.n}});
    r.rows.push_back({{"m", g.m},
                      {"n", g.n},
                      {"measured", g.measured},
                      {"spectral", g.spectral},
                      {"spectral_error", error},
                      {"claimed_bound", g.claimed_bound},
                      {"finite_bound", g.finite_bound},
                      {"exceeds_claimed_bound", g.exceeds_claimed_bound}});
  }
  if (max_error > c.tolerance)
    throw InvariantViolation("block gap departs from the sign-pattern value by " +
                             number_text(max_error));
  r.summary = {{"max_spectral_error", max_error},
               {"spectral_agreement", true},
               {"flagged_count", flagged.size()},
               {"flagged", flagged}};
  return r;
}

int distance_crossing(const AngleSequence& alpha, const AngleSequence& beta, int start,
                      double threshold) {
  if (start < 1 || static_cast<std::size_t>(start) > alpha.size())
    throw InvalidInput("distance_crossing: start outside the sequence");
  const auto products = overlap_partial_products(alpha, beta, static_cast<std::size_t>(start),
                                                 alpha.size());
  for (std::size_t k = 0; k < products.size(); ++k) {
    const double p = products[k];
    if (2.0 * std::sqrt(std::max(0.0, 1.0 - p * p)) > threshold)
      return start + static_cast<int>(k);
  }
  return 0;
}

Report run_separation(const SeparationConfig& c) {
  require(c.start >= 1, "start must be >= 1");
  require(c.levels >= c.start, "levels must be >= start");
  require(c.threshold > 0 && c.threshold < 2, "threshold must lie in (0, 2)");
  const std::size_t length = std::max(c.length, static_cast<std::size_t>(c.levels));
  const AngleSequence alpha = sequence(c.alpha, length);
  const AngleSequence beta = sequence(c.beta, length);

  Report r;
  r.experiment = "separation";
  r.config = {{"alpha", c.alpha}, {"beta", c.beta},   {"start", c.start},
              {"levels", c.levels}, {"length", length}, {"threshold", c.threshold}};

  bool nondecreasing = true;
  double previous = -1.0;
  for (const SeparationRow& row : separation_experiment(alpha, beta, c.start, c.levels)) {
    nondecreasing = nondecreasing && row.state_distance >= previous - 1e-12;
    previous = row.state_distance;
    r.rows.push_back({{"n", row.n},
                      {"overlap", row.overlap},
                      {"product_overlap", row.product_overlap},
                      {"state_distance", row.state_distance},
                      {"duality_distance", row.duality_distance},
                      {"witness_phi", row.witness_phi},
                      {"witness_psi", row.witness_psi},
                      {"witness_norm", row.witness_norm}});
  }
  const int crossing = distance_crossing(alpha, beta, c.start, c.threshold);
  r.summary = {{"final_distance", previous},
               {"distance_nondecreasing", nondecreasing},
               {"crossing_level", crossing == 0 ? Json(nullptr) : Json(crossing)}};
  return r;
}

Report run_witness_search(const WitnessSearchConfig& c) {
  require_levels(c.level, 0);
  require(c.trials >= 1, "trials must be >= 1");
  require(c.net == "auto" || c.net == "exhaustive" || c.net == "random",
          "net must be auto, exhaustive or random");
  require(c.net_size >= 1, "net size must be >= 1");
  for (double d : c.deltas)
    require(d > 0 && d < 2, "perturbation sizes must lie in (0, 2)");
  const TruncationLevel level(c.level);
  const Index dim = level.dim();

  bool exhaustive = c.net == "exhaustive";
  if (c.net == "auto")
    exhaustive = c.level <= 4 && estimated_net_cardinality(level, c.epsilon) <= 2.0e6;
  const UnitaryNet net = exhaustive ? enumerate_net(level, c.epsilon)
                                    : random_net(level, c.epsilon, c.net_size,
                                                 trial_seed(c.seed, 0xfe7));
  const TestElementNet tests =
      TestElementNet::standard(level, trial_seed(c.seed, 0x7e57), c.test_count);

  Report r;
  r.experiment = "fsigma-search";
  r.config = {{"level", c.level},       {"epsilon", c.epsilon},       {"trials", c.trials},
              {"seed", c.seed},         {"net", c.net},               {"net_size", c.net_size},
              {"test_count", c.test_count}, {"deltas", c.deltas}};

  int found = 0;
  bool sound = true;
  std::vector<double> worst_gap(c.deltas.size(), 0.0);
  std::vector<double> worst_ball(c.deltas.size(), 0.0);
  for (int i = 0; i < c.trials; ++i) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(i)));
    const VectorState psi(rng.unit_vector(dim), level);
    const ComplexMatrix v = rng.haar_unitary(dim);
    const VectorState phi = pullback(psi, v);
    const auto w = witness_search(phi, psi, net, tests);
    Json row = {{"trial", i}, {"found", w.has_value()}};
    if (w) {
      ++found;
      const DistanceCheck check = distance_bound_check(phi, psi, w->u);
      sound = sound && check.below2;
      row["index"] = w->index;
      row["gap"] = w->gap;
      row["unit_ball_gap"] = check.norm_distance;
      row["below2"] = check.below2;
    } else {
      row["index"] = nullptr;
      row["gap"] = nullptr;
      row["unit_ball_gap"] = nullptr;
      row["below2"] = nullptr;
    }
    for (std::size_t k = 0; k < c.deltas.size(); ++k) {
      const ComplexMatrix u = perturb_unitary(v, c.deltas[k], rng.engine()());
      worst_gap[k] = std::max(worst_gap[k], sup_gap_unchecked(phi, psi, u, tests.elements()));
      worst_ball[k] = std::max(worst_ball[k], state_distance(phi, pullback(psi, u)));
    }
    r.rows.push_back(std::move(row));
  }

  Json perturbation = Json::array();
  bool bound_holds = true;
  for (std::size_t k = 0; k < c.deltas.size(); ++k) {
    const bool holds = worst_ball[k] <= 2 * c.deltas[k] + 1e-9;
    bound_holds = bound_holds && holds;
    perturbation.push_back({{"delta", c.deltas[k]},
                            {"max_gap", worst_gap[k]},
                            {"max_unit_ball_gap", worst_ball[k]},
                            {"bound", 2 * c.deltas[k]},
                            {"holds", holds}});
  }
  const DensityReport density = net_density(net, 100, trial_seed(c.seed, 0xde75));
  r.summary = {{"net_kind", to_string(net.kind)},
               {"net_elements", net.elements.size()},
               {"grid_spacing", net.grid_spacing},
               {"density_max_nearest", density.max_nearest},
               {"density_mean_nearest", density.mean_nearest},
               {"found", found},
               {"all_found", found == c.trials},
               {"witnesses_below2", sound},
               {"perturbation", perturbation},
               {"perturbation_bound_holds", bound_holds}};
  return r;
}

const char* to_string(ProductFamily f) {
  return f == ProductFamily::geometric ? "geometric" : "telescoping";
}

ProductFamily product_family_from_string(const std::string& s) {
  if (s == "geometric")
    return ProductFamily::geometric;
  if (s == "telescoping")
    return ProductFamily::telescoping;
  throw InvalidInput("unknown product family '" + s + "'");
}

Report run_product_test(const ProductTestConfig& c) {
  require(c.terms >= 1 && c.terms <= 10000, "terms must lie in [1, 10000]");
  const bool geometric = c.family == ProductFamily::geometric;
  std::vector<double> defects;
  std::vector<double> factors;
  for (int j = 1; j <= c.terms; ++j) {
    defects.push_back(geometric ? std::ldexp(1.0, -j) : 1.0 / (j + 1.0));
    factors.push_back(1.0 - defects.back());
  }
  const auto products = partial_products(factors);

  Report r;
  r.experiment = "product-test";
  r.config = {{"family", to_string(c.family)}, {"terms", c.terms}};

  double min_product = 1.0;
  double max_exact_error = 0.0;
  bool within_weierstrass = true;
  bool above_refined = true;
  double tail = 0.0; // sum of defects from j = 2
  for (int j = 1; j <= c.terms; ++j) {
    const std::size_t k = static_cast<std::size_t>(j - 1);
    const ProductBounds b = weierstrass_bounds(std::span(defects).first(k + 1));
    if (j >= 2)
      tail += defects[k];
    // Factor out t_1 before applying the lower bound.
    const double refined = factors[0] * (1.0 - tail);
    const double p = products[k];
    min_product = std::min(min_product, p);
    within_weierstrass = within_weierstrass && p >= b.lower - 1e-15 && p <= b.upper + 1e-15;
    above_refined = above_refined && p >= refined - 1e-15;
    Json row = {{"j", j},
                {"factor", factors[k]},
                {"partial_product", p},
                {"defect_sum", 1.0 - b.lower},
                {"weierstrass_lower", b.lower},
                {"weierstrass_upper", b.upper},
                {"refined_lower", refined}};
    if (geometric) {
      row["exact"] = nullptr;
    } else {
      const double exact = 1.0 / (j + 1.0);
      max_exact_error = std::max(max_exact_error, std::abs(p - exact));
      row["exact"] = exact;
    }
    r.rows.push_back(std::move(row));
  }
  r.summary = {{"final_product", products.back()},
               {"min_partial_product", min_product},
               {"within_weierstrass", within_weierstrass},
               {"above_refined_lower", above_refined}};
  if (geometric) {
    r.summary["refined_limit_bound"] = 0.25;
    r.summary["above_quarter"] = min_product >= 0.25;
  } else {
    r.summary["max_exact_error"] = max_exact_error;
  }
  return r;
}

} // namespace carlab
