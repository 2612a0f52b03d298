// carlab: batch runner for the CAR-truncation experiments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "carlab/experiments.hpp"

namespace fs = std::filesystem;
using namespace carlab;

namespace {

enum Exit { ok = 0, config_error = 2, size_error = 3, invariant_error = 4, io_error = 5 };

int exit_code(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::size_limit:
  case ErrorKind::level:
    return size_error;
  case ErrorKind::invariant:
    return invariant_error;
  case ErrorKind::io:
    return io_error;
  default:
    return config_error;
  }
}

int report_error(const std::string& kind, int code, const std::string& message) {
  const Json record = {{"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}};
  std::cerr << record.dump() << '\n';
  return code;
}

struct Output {
  std::string format = "json";
  std::string dir;
  std::string file;
};

void add_output(CLI::App* sub, Output& out) {
  sub->add_option("--out", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--output-dir", out.dir,
                  "Directory for <experiment>.<format> (default: $CARLAB_OUTPUT_DIR, else stdout)");
  sub->add_option("--output", out.file, "Explicit output file");
}

void emit(const Report& report, const Output& out) {
  const std::string text = out.format == "csv" ? to_csv_text(report) : to_json_text(report);
  fs::path target;
  if (!out.file.empty()) {
    target = out.file;
  } else {
    std::string dir = out.dir;
    if (dir.empty())
      if (const char* env = std::getenv("CARLAB_OUTPUT_DIR"))
        dir = env;
    if (dir.empty()) {
      std::cout << text;
      return;
    }
    target = fs::path(dir) / (report.experiment + "." + out.format);
  }
  std::error_code ec;
  if (target.has_parent_path())
    fs::create_directories(target.parent_path(), ec);
  std::ofstream f(target, std::ios::binary);
  if (!f)
    throw IoError("cannot write " + target.string());
  f << text;
  if (!f)
    throw IoError("error writing " + target.string());
}

void add_policy(CLI::App* sub, std::string& policy) {
  sub->add_option("--phase-policy", policy, "Phase attached to each step unitary")
      ->check(CLI::IsMember({"none", "eigenvalue-one"}))
      ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-truncation experiments on product states of the CAR algebra"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Output out;
  Report report;
  std::function<Report()> run;

  OverlapDistanceConfig od;
  auto* l1 = app.add_subcommand("lemma1-verify",
                                "Closed-form minimal ||I - u|| with u xi = eta against the oracle");
  l1->add_option("--dim", od.dim)->capture_default_str();
  l1->add_option("--trials", od.trials)->capture_default_str();
  l1->add_option("--seed", od.seed)->capture_default_str();
  l1->add_option("--budget", od.budget, "Oracle evaluations per pair")->capture_default_str();
  l1->add_option("--tolerance", od.tolerance)->capture_default_str();
  l1->add_flag("--phase-aligned", od.phase_aligned, "Rotate eta so that <xi|eta> >= 0");
  add_output(l1, out);
  l1->callback([&] { run = [&] { return run_overlap_distance(od); }; });

  ProductConstantConfig pc;
  auto* l2 = app.add_subcommand("lemma2-adjudicate",
                                "Constant in the product-state distance formula");
  l2->add_option("--pairs", pc.pairs)->capture_default_str();
  l2->add_option("--factors", pc.factors)->capture_default_str();
  l2->add_option("--seed", pc.seed)->capture_default_str();
  l2->add_option("--budget", pc.budget)->capture_default_str();
  l2->add_option("--tolerance", pc.tolerance)->capture_default_str();
  add_output(l2, out);
  l2->callback([&] { run = [&] { return run_product_constant(pc); }; });

  ReduceConfig rc;
  std::string rc_policy = "none";
  auto* red = app.add_subcommand("reduce", "Intertwiner chain and square-summability trend");
  red->add_option("--alpha", rc.alpha, "Sequence descriptor")->capture_default_str();
  red->add_option("--beta", rc.beta, "Sequence descriptor")->capture_default_str();
  red->add_option("--levels", rc.levels, "Matrix levels (<= 12)")->capture_default_str();
  red->add_option("--length", rc.length, "Terms used for the classification")
      ->capture_default_str();
  red->add_option("--seed", rc.seed)->capture_default_str();
  red->add_option("--tests", rc.test_count, "Random test contractions per level")
      ->capture_default_str();
  red->add_option("--sum-epsilon", rc.window.sum_epsilon)->capture_default_str();
  red->add_option("--product-delta", rc.window.product_delta)->capture_default_str();
  add_policy(red, rc_policy);
  add_output(red, out);
  red->callback([&] {
    rc.policy = phase_policy_from_string(rc_policy);
    run = [&] { return run_reduce(rc); };
  });

  CauchyGapConfig cg;
  std::string cg_policy = "none";
  auto* cau = app.add_subcommand("cauchy-gaps", "Measured ||v_m (x) I - v_n|| against bounds");
  cau->add_option("--alpha", cg.alpha)->capture_default_str();
  cau->add_option("--beta", cg.beta)->capture_default_str();
  cau->add_option("--levels", cg.levels)->capture_default_str();
  cau->add_option("--max-span", cg.max_span)->capture_default_str();
  cau->add_option("--tolerance", cg.tolerance)->capture_default_str();
  add_policy(cau, cg_policy);
  add_output(cau, out);
  cau->callback([&] {
    cg.policy = phase_policy_from_string(cg_policy);
    run = [&] { return run_cauchy_gaps(cg); };
  });

  SeparationConfig sc;
  auto* sep = app.add_subcommand("separation", "Tail product states drifting to distance 2");
  sep->add_option("--alpha", sc.alpha)->capture_default_str();
  sep->add_option("--beta", sc.beta)->capture_default_str();
  sep->add_option("--start", sc.start)->capture_default_str();
  sep->add_option("--levels", sc.levels)->capture_default_str();
  sep->add_option("--length", sc.length, "Terms scanned for the threshold crossing")
      ->capture_default_str();
  sep->add_option("--threshold", sc.threshold)->capture_default_str();
  add_output(sep, out);
  sep->callback([&] { run = [&] { return run_separation(sc); }; });

  WitnessSearchConfig ws;
  auto* fs_cmd = app.add_subcommand("fsigma-search", "Witness search over a unitary net");
  fs_cmd->add_option("--level", ws.level)->capture_default_str();
  fs_cmd->add_option("--epsilon", ws.epsilon)->capture_default_str();
  fs_cmd->add_option("--trials", ws.trials)->capture_default_str();
  fs_cmd->add_option("--seed", ws.seed)->capture_default_str();
  fs_cmd->add_option("--net", ws.net)
      ->check(CLI::IsMember({"auto", "exhaustive", "random"}))
      ->capture_default_str();
  fs_cmd->add_option("--net-size", ws.net_size, "Random net size")->capture_default_str();
  fs_cmd->add_option("--tests", ws.test_count)->capture_default_str();
  fs_cmd->add_option("--deltas", ws.deltas, "Perturbation sizes")->delimiter(',');
  add_output(fs_cmd, out);
  fs_cmd->callback([&] { run = [&] { return run_witness_search(ws); }; });

  ProductTestConfig pt;
  std::string family = "geometric";
  auto* prod = app.add_subcommand("product-test", "Partial products against Weierstrass bounds");
  prod->add_option("--family", family)
      ->check(CLI::IsMember({"geometric", "telescoping"}))
      ->capture_default_str();
  prod->add_option("--terms", pt.terms)->capture_default_str();
  add_output(prod, out);
  prod->callback([&] {
    pt.family = product_family_from_string(family);
    run = [&] { return run_product_test(pt); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("config", config_error, e.what());
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), exit_code(e.kind()), e.what());
  }

  try {
    emit(run(), out);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), exit_code(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", invariant_error, e.what());
  }
  return ok;
}
