#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "llab/expr.hpp"
#include "llab/harness.hpp"
#include "llab/io.hpp"

namespace {

using nlohmann::ordered_json;

struct ExampleOptions {
  double tolerance = 5e-4;
  bool json = false;
  int precision = 4;
};

struct CampaignOptions {
  std::string config_path;
  std::vector<std::string> checks;
  std::vector<int> dims;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::string function;
};

struct ClassifyOptions {
  std::string function;
  std::vector<int> dims;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
};

struct EvalOptions {
  std::string expression;
  std::vector<std::string> bindings;
};

// min eigenvalue clearly above zero and the whole gap visibly nonzero: the
// reading of "strictly below" used for the printed chain.
constexpr double kStrictGap = 1e-4;

int cmd_example(const ExampleOptions& opt) {
  const llab::WorkedExample ex = llab::worked_example();
  const llab::HermitianMatrix fa = llab::apply_function(ex.f, ex.a);
  const std::vector<llab::HermitianMatrix> computed = {
      llab::apply_function(ex.f, ex.phi(ex.a)),
      llab::inv(ex.phi(llab::inv(fa))),
      ex.phi(fa),
  };
  const char* labels[] = {"f(Phi(A))", "Phi(f(A)^-1)^-1", "Phi(f(A))"};

  const llab::LoewnerVerdict links[2] = {
      llab::loewner_compare(computed[0], computed[1]),
      llab::loewner_compare(computed[1], computed[2]),
  };
  bool strict = true;
  for (const llab::LoewnerVerdict& v : links)
    strict = strict && v.holds_le() && v.gap_spectral_radius > kStrictGap;

  double max_dev = 0.0;
  for (int k = 0; k < 3; ++k)
    max_dev = std::max(max_dev,
                       llab::max_abs(computed[k] - ex.reference[k]));
  const bool match = max_dev <= opt.tolerance;

  if (opt.json) {
    ordered_json out;
    for (int k = 0; k < 3; ++k)
      out["matrices"][labels[k]] =
          ordered_json::parse(llab::matrix_to_json(computed[k]));
    ordered_json link_list = ordered_json::array();
    for (const llab::LoewnerVerdict& v : links)
      link_list.push_back({{"relation", llab::to_string(v.relation)},
                           {"minEig", v.min_eig_rhs_minus_lhs},
                           {"gapSpectralRadius", v.gap_spectral_radius},
                           {"tolerance", v.tolerance}});
    out["links"] = std::move(link_list);
    out["strict"] = strict;
    out["maxDeviation"] = max_dev;
    out["tolerance"] = opt.tolerance;
    out["match"] = match;
    std::cout << out.dump(2) << "\n";
  } else {
    for (int k = 0; k < 3; ++k) {
      std::cout << labels[k] << " =\n"
                << llab::format_matrix(computed[k], opt.precision);
      if (k < 2)
        std::cout << "  <  (link min eig "
                  << links[k].min_eig_rhs_minus_lhs << ", gap radius "
                  << links[k].gap_spectral_radius << ")\n";
    }
    std::cout << "chain strict: " << (strict ? "yes" : "no") << "\n";
    std::cout << "fixture match: " << (match ? "yes" : "no")
              << " (max deviation " << max_dev << ", tolerance "
              << opt.tolerance << ")\n";
    if (!match) {
      std::cout << "deviations above tolerance:\n";
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < computed[k].dim(); ++i)
          for (int j = 0; j < computed[k].dim(); ++j) {
            const double dev = std::abs(computed[k](i, j) -
                                        ex.reference[k](i, j));
            if (dev > opt.tolerance)
              std::printf("  %s[%d,%d] computed %.10f reference %.10f "
                          "delta %.3e\n",
                          labels[k], i, j, computed[k](i, j).real(),
                          ex.reference[k](i, j).real(), dev);
          }
    }
  }
  return match && strict ? 0 : 1;
}

int cmd_campaign(const CampaignOptions& opt, const CLI::App* sub) {
  llab::CampaignConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = llab::load_campaign_config(opt.config_path);
  } else {
    cfg.checks = llab::check_names();
  }
  if (sub->count("--seed")) cfg.seed = opt.seed;
  if (sub->count("--dims")) cfg.dims = opt.dims;
  if (sub->count("--trials")) cfg.trials = opt.trials;
  if (sub->count("--tolerance")) cfg.rel_tol = opt.tolerance;
  if (sub->count("--function")) cfg.function = opt.function;
  if (sub->count("--checks")) cfg.checks = opt.checks;

  const std::vector<llab::CheckResult> results = llab::run_campaign(cfg);
  std::cout << llab::report_lines(results);
  long failures = 0;
  for (const llab::CheckResult& res : results)
    failures += static_cast<long>(res.failures.size());
  return static_cast<int>(std::min<long>(failures, 125));
}

int cmd_classify(const ClassifyOptions& opt, const CLI::App* sub) {
  const llab::ScalarFunction f = llab::parse_function(opt.function);
  llab::ClassifyConfig cfg;
  if (sub->count("--dims")) cfg.dims = opt.dims;
  if (sub->count("--trials")) cfg.trials = opt.trials;
  if (sub->count("--seed")) cfg.seed = opt.seed;
  if (sub->count("--tolerance")) cfg.rel_tol = opt.tolerance;
  const llab::ClassifierVerdict verdict = llab::classify(f, cfg);
  std::cout << llab::classifier_verdict_to_json(verdict) << "\n";
  return verdict.any_counterexample() ? 2 : 0;
}

int cmd_eval(const EvalOptions& opt) {
  const llab::EvalBindings bindings = llab::parse_bindings(opt.bindings);
  const llab::HermitianMatrix result =
      llab::eval_expression(opt.expression, bindings);
  std::cout << llab::matrix_to_json(result) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for operator means, positive maps, "
               "perspectives, and matrix inequalities"};
  app.require_subcommand(1);

  ExampleOptions example_opt;
  CLI::App* example = app.add_subcommand(
      "example", "reproduce the built-in compression example");
  example->add_option("--tolerance", example_opt.tolerance,
                      "entrywise fixture tolerance (default 5e-4)");
  example->add_flag("--json", example_opt.json, "machine-readable report");
  example->add_option("--precision", example_opt.precision,
                      "printed decimals (default 4)");

  CampaignOptions campaign_opt;
  CLI::App* campaign = app.add_subcommand(
      "campaign", "run randomized inequality sweeps (JSON-lines on stdout)");
  campaign->add_option("--config", campaign_opt.config_path,
                       "campaign config JSON file");
  campaign->add_option("--checks", campaign_opt.checks,
                       "check names (default: all)")
      ->delimiter(',');
  campaign->add_option("--dims", campaign_opt.dims, "matrix dimensions")
      ->delimiter(',');
  campaign->add_option("--trials", campaign_opt.trials,
                       "trials per check per dim");
  campaign->add_option("--seed", campaign_opt.seed, "campaign seed");
  campaign->add_option("--tolerance", campaign_opt.tolerance,
                       "relative comparison tolerance");
  campaign->add_option("--function", campaign_opt.function,
                       "scalar function spec, e.g. power:-0.5");

  ClassifyOptions classify_opt;
  CLI::App* classify = app.add_subcommand(
      "classify", "probe the four log-convexity characterizations");
  classify->add_option("--function", classify_opt.function,
                       "scalar function spec")
      ->required();
  classify->add_option("--dims", classify_opt.dims, "matrix dimensions")
      ->delimiter(',');
  classify->add_option("--trials", classify_opt.trials,
                       "trials per dim per probe");
  classify->add_option("--seed", classify_opt.seed, "probe seed");
  classify->add_option("--tolerance", classify_opt.tolerance,
                       "relative comparison tolerance");

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate an expression over matrix/field/map files");
  eval->add_option("expression", eval_opt.expression,
                   "e.g. \"mean(sharp, A, fn(inverse, B))\"")
      ->required();
  eval->add_option("bindings", eval_opt.bindings, "NAME=path bindings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (example->parsed()) return cmd_example(example_opt);
    if (campaign->parsed()) return cmd_campaign(campaign_opt, campaign);
    if (classify->parsed()) return cmd_classify(classify_opt, classify);
    if (eval->parsed()) return cmd_eval(eval_opt);
  } catch (const llab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
