#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <set>
#include <string>
#include <vector>

#include "carlab/experiments.hpp"
#include "carlab/orbit.hpp"
#include "carlab/random.hpp"

namespace py = pybind11;
using namespace carlab;

namespace {

UnitVector unit(const ComplexVector& v) { return UnitVector(v); }

AngleSequence angles(const std::vector<double>& v) { return AngleSequence(v); }

Constraint constraint_from_string(const std::string& s) {
  if (s == "exact")
    return Constraint::exact_vector;
  if (s == "state")
    return Constraint::state_equality;
  throw InvalidInput("constraint must be exact or state");
}

// Reads `key` into `out` if present and records it as consumed.
class ConfigReader {
public:
  explicit ConfigReader(const Json& j) : j_(j) {
    if (!j_.is_object())
      throw InvalidInput("config must be an object");
  }

  template <class T> void read(const char* key, T& out) {
    used_.insert(key);
    if (!j_.contains(key))
      return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw InvalidInput(std::string("bad value for config key ") + key);
    }
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!used_.count(item.key()))
        throw InvalidInput("unknown config key " + item.key());
  }

private:
  const Json& j_;
  std::set<std::string> used_;
};

void read_policy(ConfigReader& in, PhasePolicy& policy) {
  std::string s = to_string(policy);
  in.read("phase_policy", s);
  policy = phase_policy_from_string(s);
}

Report run_experiment(const std::string& name, const Json& config) {
  ConfigReader in(config);
  if (name == "lemma1-verify") {
    OverlapDistanceConfig c;
    in.read("dim", c.dim);
    in.read("trials", c.trials);
    in.read("seed", c.seed);
    in.read("budget", c.budget);
    in.read("phase_aligned", c.phase_aligned);
    in.read("tolerance", c.tolerance);
    in.finish();
    return run_overlap_distance(c);
  }
  if (name == "lemma2-adjudicate") {
    ProductConstantConfig c;
    in.read("pairs", c.pairs);
    in.read("factors", c.factors);
    in.read("seed", c.seed);
    in.read("budget", c.budget);
    in.read("tolerance", c.tolerance);
    in.finish();
    return run_product_constant(c);
  }
  if (name == "reduce") {
    ReduceConfig c;
    in.read("alpha", c.alpha);
    in.read("beta", c.beta);
    in.read("levels", c.levels);
    in.read("length", c.length);
    read_policy(in, c.policy);
    in.read("seed", c.seed);
    in.read("test_count", c.test_count);
    in.read("sum_epsilon", c.window.sum_epsilon);
    in.read("product_delta", c.window.product_delta);
    in.finish();
    return run_reduce(c);
  }
  if (name == "cauchy-gaps") {
    CauchyGapConfig c;
    in.read("alpha", c.alpha);
    in.read("beta", c.beta);
    in.read("levels", c.levels);
    in.read("max_span", c.max_span);
    read_policy(in, c.policy);
    in.read("tolerance", c.tolerance);
    in.finish();
    return run_cauchy_gaps(c);
  }
  if (name == "separation") {
    SeparationConfig c;
    in.read("alpha", c.alpha);
    in.read("beta", c.beta);
    in.read("start", c.start);
    in.read("levels", c.levels);
    in.read("length", c.length);
    in.read("threshold", c.threshold);
    in.finish();
    return run_separation(c);
  }
  if (name == "fsigma-search") {
    WitnessSearchConfig c;
    in.read("level", c.level);
    in.read("epsilon", c.epsilon);
    in.read("trials", c.trials);
    in.read("seed", c.seed);
    in.read("net", c.net);
    in.read("net_size", c.net_size);
    in.read("test_count", c.test_count);
    in.read("deltas", c.deltas);
    in.finish();
    return run_witness_search(c);
  }
  if (name == "product-test") {
    ProductTestConfig c;
    std::string family = to_string(c.family);
    in.read("family", family);
    c.family = product_family_from_string(family);
    in.read("terms", c.terms);
    in.finish();
    return run_product_test(c);
  }
  throw InvalidInput("unknown experiment " + name);
}

py::dict gap_dict(const BlockGap& g) {
  py::dict d;
  d["m"] = g.m;
  d["n"] = g.n;
  d["measured"] = g.measured;
  d["spectral"] = g.spectral;
  d["claimed_bound"] = g.claimed_bound;
  d["finite_bound"] = g.finite_bound;
  d["exceeds_claimed_bound"] = g.exceeds_claimed_bound;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unitary displacement and product-state equivalence diagnostics";
  m.attr("__version__") = version();

  // The module attribute keeps the type alive.
  static PyObject* error_type = py::exception<Error>(m, "Error", PyExc_RuntimeError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def(
      "closed_form",
      [](const ComplexVector& xi, const ComplexVector& eta) {
        const OverlapReport r = min_distance_closed_form(unit(xi), unit(eta));
        py::dict d;
        d["overlap"] = r.overlap;
        d["abs_overlap"] = r.abs_overlap;
        d["closed_form_distance"] = r.closed_form_distance;
        d["exact_constraint_distance"] = r.exact_constraint_distance;
        return d;
      },
      py::arg("xi"), py::arg("eta"));

  m.def(
      "oracle_distance",
      [](const ComplexVector& xi, const ComplexVector& eta, const std::string& constraint,
         long budget, std::uint64_t seed) {
        const OracleResult r = min_distance_search(unit(xi), unit(eta),
                                                   constraint_from_string(constraint), budget, seed);
        py::dict d;
        d["value"] = r.value;
        d["evaluations"] = r.evaluations;
        d["restarts"] = r.restarts;
        return d;
      },
      py::arg("xi"), py::arg("eta"), py::arg("constraint") = "exact", py::arg("budget") = 10000,
      py::arg("seed") = 1);

  m.def("rotation_unitary", &rotation_unitary, py::arg("t"));
  m.def("operator_norm", &operator_norm, py::arg("a"));
  m.def("trace_norm", &trace_norm, py::arg("a"));
  m.def(
      "is_unitary", [](const ComplexMatrix& a, double tol) { return is_unitary(a, tol); },
      py::arg("a"), py::arg("tol") = default_numerics().unitary_tol);
  m.def(
      "kron",
      [](const ComplexMatrix& a, const ComplexMatrix& b) { return kron(a, b); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "product_vector",
      [](const std::vector<double>& a) { return ComplexVector(product_vector(a).values()); },
      py::arg("angles"));
  m.def(
      "state_distance",
      [](const ComplexVector& xi, const ComplexVector& eta) {
        return state_distance(VectorState(unit(xi)), VectorState(unit(eta)));
      },
      py::arg("xi"), py::arg("eta"));

  m.def(
      "classify",
      [](const std::vector<double>& alpha, const std::vector<double>& beta) {
        const PairDiagnostics p = classify_pair(angles(alpha), angles(beta));
        py::dict d;
        d["length"] = p.length;
        d["l2_sum"] = p.l2_sum;
        d["l2_tail_growth"] = p.l2_tail_growth;
        d["half_angle_sum"] = p.half_angle_sum;
        d["half_angle_tail_growth"] = p.half_angle_tail_growth;
        d["product"] = p.product;
        d["trend"] = to_string(p.trend);
        return d;
      },
      py::arg("alpha"), py::arg("beta"));

  m.def(
      "sequence",
      [](const std::string& descriptor, std::size_t length) {
        const AngleSequence s = AngleSequence::from_descriptor(descriptor, length);
        return std::vector<double>(s.values().begin(), s.values().end());
      },
      py::arg("descriptor"), py::arg("length"));

  m.def(
      "chain_gaps",
      [](const std::vector<double>& alpha, const std::vector<double>& beta,
         const std::string& policy) {
        const IntertwinerChain chain =
            build_intertwiner_chain(angles(alpha), angles(beta), static_cast<int>(alpha.size()),
                                    phase_policy_from_string(policy));
        std::vector<double> gaps;
        for (int n = 1; n <= chain.depth(); ++n)
          gaps.push_back(chain.level(n).gap_to_prev);
        return gaps;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("phase_policy") = "none");

  m.def(
      "block_gaps",
      [](const std::vector<double>& alpha, const std::vector<double>& beta, int max_span,
         const std::string& policy) {
        const IntertwinerChain chain =
            build_intertwiner_chain(angles(alpha), angles(beta), static_cast<int>(alpha.size()),
                                    phase_policy_from_string(policy));
        py::list out;
        for (const BlockGap& g : cauchy_gap_table(chain, max_span))
          out.append(gap_dict(g));
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("max_span") = 6,
      py::arg("phase_policy") = "none");

  m.def(
      "separation",
      [](const std::vector<double>& alpha, const std::vector<double>& beta, int start,
         int max_n) {
        py::list out;
        for (const SeparationRow& r :
             separation_experiment(angles(alpha), angles(beta), start, max_n)) {
          py::dict d;
          d["n"] = r.n;
          d["overlap"] = r.overlap;
          d["state_distance"] = r.state_distance;
          d["duality_distance"] = r.duality_distance;
          d["witness_phi"] = r.witness_phi;
          d["witness_psi"] = r.witness_psi;
          d["witness_norm"] = r.witness_norm;
          out.append(d);
        }
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("start"), py::arg("max_n"));

  m.def(
      "witness_search",
      [](const ComplexVector& xi, const ComplexVector& eta, double epsilon,
         std::uint64_t seed, std::size_t random_size, int test_count) -> py::object {
        const VectorState phi(unit(xi));
        const VectorState psi(unit(eta));
        if (phi.dim() != psi.dim())
          throw InvalidInput("vectors must have the same dimension");
        const TruncationLevel level = phi.level();
        const bool exhaustive =
            level.n() <= 4 && estimated_net_cardinality(level, epsilon) <= 2.0e6;
        const UnitaryNet net = exhaustive ? enumerate_net(level, epsilon)
                                          : random_net(level, epsilon, random_size, seed);
        const TestElementNet tests = TestElementNet::standard(level, seed, test_count);
        const auto w = witness_search(phi, psi, net, tests);
        if (!w)
          return py::none();
        py::dict d;
        d["index"] = w->index;
        d["u"] = w->u;
        d["gap"] = w->gap;
        d["net_kind"] = to_string(net.kind);
        d["net_size"] = net.elements.size();
        return d;
      },
      py::arg("xi"), py::arg("eta"), py::arg("epsilon") = 0.4, py::arg("seed") = 1,
      py::arg("random_size") = 4096, py::arg("test_count") = 25);

  m.def(
      "run_text",
      [](const std::string& experiment, const std::string& config, const std::string& format) {
        Json parsed;
        try {
          parsed = Json::parse(config.empty() ? "{}" : config);
        } catch (const nlohmann::json::exception&) {
          throw InvalidInput("config is not valid JSON");
        }
        if (format != "json" && format != "csv")
          throw InvalidInput("format must be json or csv");
        Report r;
        {
          py::gil_scoped_release release;
          r = run_experiment(experiment, parsed);
        }
        return format == "json" ? to_json_text(r) : to_csv_text(r);
      },
      py::arg("experiment"), py::arg("config") = "{}", py::arg("format") = "json");
}
