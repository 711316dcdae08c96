#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "llab/expr.hpp"
#include "llab/io.hpp"
#include "llab/means.hpp"
#include "llab/rng.hpp"

namespace {

namespace fs = std::filesystem;

// Scratch directory, wiped per test binary run.
class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / "llab-io-test") {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string put(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream out(p);
    out << text;
    return p.string();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("matrix json round trips exactly") {
  llab::Rng rng(0x10);
  for (int dim = 1; dim <= 6; ++dim) {
    const llab::HermitianMatrix a = llab::random_spd(dim, rng);
    const llab::HermitianMatrix back =
        llab::matrix_from_json(llab::matrix_to_json(a));
    CHECK(llab::max_abs(a - back) == 0.0);
  }
}

TEST_CASE("matrix json accepts real input and omits zero imaginary parts") {
  const llab::HermitianMatrix a =
      llab::matrix_from_json(R"({"dim": 2, "re": [[2, 1], [1, 3]]})");
  CHECK(a(0, 1) == std::complex<double>(1.0, 0.0));
  CHECK(llab::matrix_to_json(a).find("\"im\"") == std::string::npos);

  const llab::HermitianMatrix b = llab::matrix_from_json(
      R"({"dim": 2, "re": [[2, 0], [0, 3]], "im": [[0, 1], [-1, 0]]})");
  CHECK(b(0, 1) == std::complex<double>(0.0, 1.0));
  CHECK(llab::matrix_to_json(b).find("\"im\"") != std::string::npos);
}

TEST_CASE("matrix json rejects malformed input") {
  CHECK_THROWS_AS(llab::matrix_from_json("{\"dim\": 2,"), llab::ParseError);
  CHECK_THROWS_AS(llab::matrix_from_json("[1, 2]"), llab::ConfigError);
  CHECK_THROWS_AS(llab::matrix_from_json(R"({"dim": 2, "re": [[1, 0]]})"),
                  llab::ConfigError);
  CHECK_THROWS_AS(
      llab::matrix_from_json(
          R"({"dim": 2, "re": [[1, 0], [0, 1]], "imag": [[0, 0], [0, 0]]})"),
      llab::ConfigError);
  // Hermitian defect beyond tolerance
  CHECK_THROWS_AS(llab::matrix_from_json(R"({"dim": 2, "re": [[1, 5], [0, 1]]})"),
                  llab::NotHermitianError);
}

TEST_CASE("field json parses weights and members") {
  const std::string text = R"([
    {"weight": 0.25, "matrix": {"dim": 1, "re": [[2]]}},
    {"weight": 0.75, "matrix": {"dim": 1, "re": [[5]]}}
  ])";
  const llab::OperatorField field = llab::field_from_json(text);
  CHECK(field.length() == 2);
  CHECK(field[1].weight == 0.75);
  CHECK(field[0].matrix(0, 0).real() == 2.0);

  CHECK_THROWS_AS(llab::field_from_json("[]"), llab::ConfigError);
  CHECK_THROWS_AS(
      llab::field_from_json(
          R"([{"weight": -1, "matrix": {"dim": 1, "re": [[2]]}}])"),
      llab::ConfigError);
  CHECK_THROWS_AS(
      llab::field_from_json(R"([{"matrix": {"dim": 1, "re": [[2]]}}])"),
      llab::ConfigError);
}

TEST_CASE("map json covers all four kinds") {
  const llab::PositiveLinearMap comp = llab::map_from_json(
      R"({"kind": "compression", "inDim": 3, "indices": [2, 3]})");
  CHECK(comp.in_dim() == 3);
  CHECK(comp.out_dim() == 2);

  const llab::PositiveLinearMap kraus = llab::map_from_json(R"({
    "kind": "kraus",
    "factors": [{"rows": 2, "cols": 2, "re": [[1, 0], [0, 0]]},
                {"rows": 2, "cols": 2, "re": [[0, 0], [0, 1]]}]
  })");
  CHECK(kraus.unital());

  const llab::PositiveLinearMap dsavg = llab::map_from_json(
      R"({"kind": "dsavg", "blockDims": [2, 2], "weights": [0.5, 0.5]})");
  CHECK(dsavg.in_dim() == 4);
  CHECK(dsavg.out_dim() == 2);

  const llab::PositiveLinearMap pinch = llab::map_from_json(R"({
    "kind": "pinching",
    "projections": [{"rows": 2, "cols": 2, "re": [[1, 0], [0, 0]]},
                    {"rows": 2, "cols": 2, "re": [[0, 0], [0, 1]]}]
  })");
  CHECK(pinch.unital());

  CHECK_THROWS_AS(llab::map_from_json(R"({"kind": "transpose"})"),
                  llab::ConfigError);
  CHECK_THROWS_AS(
      llab::map_from_json(
          R"({"kind": "compression", "inDim": 3, "indices": [2, 3], "x": 1})"),
      llab::ConfigError);
}

TEST_CASE("campaign config json honours defaults and overrides") {
  const llab::CampaignConfig all = llab::campaign_config_from_json("{}");
  CHECK(all.checks == llab::check_names());
  CHECK(all.trials == 200);
  CHECK(all.seed == 1);

  const llab::CampaignConfig cfg = llab::campaign_config_from_json(R"({
    "checks": ["mean-sharp"], "dims": [2], "trials": 7,
    "seed": 99, "tolerance": 1e-9, "function": "inverse"
  })");
  CHECK(cfg.checks == std::vector<std::string>{"mean-sharp"});
  CHECK(cfg.dims == std::vector<int>{2});
  CHECK(cfg.trials == 7);
  CHECK(cfg.seed == 99);
  CHECK(cfg.rel_tol == 1e-9);
  CHECK(cfg.function == "inverse");

  const llab::CampaignConfig none =
      llab::campaign_config_from_json(R"({"checks": []})");
  CHECK(none.checks.empty());

  CHECK_THROWS_AS(llab::campaign_config_from_json(R"({"trials": -1})"),
                  llab::ConfigError);
  CHECK_THROWS_AS(llab::campaign_config_from_json(R"({"tolerance": 0})"),
                  llab::ConfigError);
  CHECK_THROWS_AS(llab::campaign_config_from_json(R"({"dimms": [2]})"),
                  llab::ConfigError);
}

TEST_CASE("report lines carry one summary object per check") {
  llab::CampaignConfig cfg;
  cfg.checks = {"mean-nabla", "mean-harm"};
  cfg.dims = {2};
  cfg.trials = 5;
  const std::string report = llab::report_lines(llab::run_campaign(cfg));

  int lines = 0;
  std::size_t pos = 0;
  while ((pos = report.find('\n', pos)) != std::string::npos) {
    ++lines;
    ++pos;
  }
  CHECK(lines == 2);
  CHECK(report.rfind("{\"check\":", 0) == 0);
  CHECK(report.find("\"verdict\":\"pass\"") != std::string::npos);
}

TEST_CASE("classifier verdict serializes to parseable json") {
  llab::ClassifyConfig cfg;
  cfg.dims = {2};
  cfg.trials = 10;
  const auto verdict = llab::classify(llab::ScalarFunction::inverse(), cfg);
  const std::string text = llab::classifier_verdict_to_json(verdict);
  CHECK(text.find("\"anyCounterexample\": false") != std::string::npos);
  CHECK(text.find("\"crossProbeConsistent\": true") != std::string::npos);
  CHECK(text.find("\"operatorLogConvex\": true") != std::string::npos);
}

TEST_CASE("format_matrix prints an aligned table") {
  const llab::HermitianMatrix a =
      llab::HermitianMatrix::real(2, {1.0, -0.25, -0.25, 12.5});
  const std::string text = llab::format_matrix(a, 2);
  CHECK(text ==
        "[  1.00  -0.25 ]\n"
        "[ -0.25  12.50 ]\n");

  const llab::HermitianMatrix c{llab::Cmat(
      2, 2, {1.0, {0.0, 1.0}, {0.0, -1.0}, 1.0})};
  CHECK(llab::format_matrix(c, 2).find("i") != std::string::npos);
}

TEST_CASE("eval evaluates means, functions, and composition") {
  Scratch scratch;
  llab::Rng rng(0x33);
  const llab::HermitianMatrix a = llab::random_spd(3, rng);
  const llab::HermitianMatrix b = llab::random_spd(3, rng);
  const std::string pa = scratch.put("a.json", llab::matrix_to_json(a));
  const std::string pb = scratch.put("b.json", llab::matrix_to_json(b));
  const llab::EvalBindings bindings = {{"A", pa}, {"B", pb}};

  const llab::HermitianMatrix sharp =
      llab::eval_expression("mean(sharp, A, B)", bindings);
  CHECK(llab::max_abs(sharp - llab::mean_geometric(a, b)) <= 1e-12);

  const llab::HermitianMatrix nested =
      llab::eval_expression("fn(inverse, mean(nabla, A, fn(power:-1, B)))",
                            bindings);
  const llab::HermitianMatrix expect =
      llab::inv(llab::mean_arithmetic(a, llab::inv(b)));
  CHECK(llab::max_abs(nested - expect) <= 1e-10);

  const llab::HermitianMatrix persp =
      llab::eval_expression("persp(power:-0.5, A, B)", bindings);
  CHECK(llab::max_abs(persp - llab::perspective(
                                  llab::ScalarFunction::power(-0.5), a, b)) <=
        1e-12);
}

TEST_CASE("eval reads fields and maps from bound files") {
  Scratch scratch;
  llab::Rng rng(0x44);
  const llab::HermitianMatrix a = llab::random_spd(2, rng);
  const llab::HermitianMatrix b = llab::random_spd(2, rng);

  const std::string fa = scratch.put(
      "fa.json",
      "[{\"weight\": 1.0, \"matrix\": " + llab::matrix_to_json(a) + "}]");
  const std::string fb = scratch.put(
      "fb.json",
      "[{\"weight\": 1.0, \"matrix\": " + llab::matrix_to_json(b) + "}]");
  const std::string pm = scratch.put(
      "m.json", R"({"kind": "compression", "inDim": 2, "indices": [1]})");
  const std::string pa = scratch.put("a.json", llab::matrix_to_json(a));

  const llab::EvalBindings bindings = {{"FA", fa}, {"FB", fb},
                                       {"M", pm}, {"A", pa}};

  const llab::HermitianMatrix theta =
      llab::eval_expression("theta(power:-0.5, FA, FB)", bindings);
  CHECK(llab::max_abs(theta - llab::perspective(
                                  llab::ScalarFunction::power(-0.5), a, b)) <=
        1e-12);

  const llab::HermitianMatrix mapped =
      llab::eval_expression("map(M, A)", bindings);
  CHECK(mapped.dim() == 1);
  CHECK(mapped(0, 0) == a(0, 0));
}

TEST_CASE("eval reports positions for grammar errors") {
  Scratch scratch;
  const std::string pa = scratch.put(
      "a.json", llab::matrix_to_json(llab::HermitianMatrix::identity(2)));
  const llab::EvalBindings bindings = {{"A", pa}};

  CHECK_THROWS_AS(llab::eval_expression("mean(sharp, A, B)", bindings),
                  llab::ParseError);
  CHECK_THROWS_AS(llab::eval_expression("blend(A, A)", bindings),
                  llab::ParseError);
  CHECK_THROWS_AS(llab::eval_expression("mean(geo, A, A)", bindings),
                  llab::ParseError);
  CHECK_THROWS_AS(llab::eval_expression("fn(power:x, A)", bindings),
                  llab::ParseError);
  CHECK_THROWS_AS(llab::eval_expression("A extra", bindings),
                  llab::ParseError);
  CHECK_THROWS_AS(llab::eval_expression("", bindings), llab::ParseError);

  try {
    llab::eval_expression("mean(sharp, A, Q)", bindings);
    FAIL("expected ParseError");
  } catch (const llab::ParseError& e) {
    CHECK(std::string(e.what()).find("Q") != std::string::npos);
  }
}

TEST_CASE("parse_bindings validates NAME=path arguments") {
  const llab::EvalBindings ok =
      llab::parse_bindings({"A=/tmp/a.json", "B2=/tmp/b.json"});
  CHECK(ok.at("A") == "/tmp/a.json");
  CHECK(ok.at("B2") == "/tmp/b.json");

  CHECK_THROWS_AS(llab::parse_bindings({"A"}), llab::ConfigError);
  CHECK_THROWS_AS(llab::parse_bindings({"=x"}), llab::ConfigError);
  CHECK_THROWS_AS(llab::parse_bindings({"A=x", "A=y"}), llab::ConfigError);
}

TEST_CASE("load_matrix reports missing files") {
  CHECK_THROWS_AS(llab::load_matrix("/nonexistent/llab/a.json"), llab::Error);
}
