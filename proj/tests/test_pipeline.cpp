#include <cstdio>
#include <fstream>
#include <omp.h>

#include "doctest.h"
#include "ist/pipeline.hpp"

using namespace ist;

namespace {

std::string write_temp_config(const std::string& body) {
  const std::string path = "pipeline_test_config.txt";
  std::ofstream os(path);
  os << body;
  return path;
}

}  // namespace

TEST_CASE("config file parsing, overrides and unknown keys") {
  const std::string path = write_temp_config(
      "# scenario for the pipeline tests\n"
      "grid.n = 32\n"
      "grid.extent = 4.5\n"
      "lax.b2 = 0.25\n"
      "potential.amplitude = 0.2\n"
      "potential.w2_im = -0.125\n"
      "evolution.t_final = 0.75\n"
      "io.format = binary\n"
      "run.strict = true\n");
  ScenarioConfig cfg = ScenarioConfig::load(path);
  std::remove(path.c_str());
  CHECK(cfg.n == 32);
  CHECK(cfg.extent == doctest::Approx(4.5));
  CHECK(cfg.b2 == doctest::Approx(0.25));
  CHECK(cfg.amplitude == doctest::Approx(0.2));
  CHECK(cfg.weight[1].imag() == doctest::Approx(-0.125));
  CHECK(cfg.t_final == doctest::Approx(0.75));
  CHECK(cfg.format == "binary");
  CHECK(cfg.strict);

  cfg.apply_override("grid.n=64");
  CHECK(cfg.n == 64);
  CHECK_THROWS_AS(cfg.apply_override("grid.bogus=1"), UsageError);
  CHECK_THROWS_AS(cfg.apply_override("no_equals_sign"), UsageError);

  const std::string bad = write_temp_config("grid.n = 32\nnot.a.key = 1\n");
  CHECK_THROWS_AS(ScenarioConfig::load(bad), UsageError);
  std::remove(bad.c_str());
}

TEST_CASE("config validation rejects inconsistent scenarios") {
  ScenarioConfig cfg;
  cfg.validate();  // defaults are fine
  ScenarioConfig bad = cfg;
  bad.n = 48;  // not a power of two
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = cfg;
  bad.b2 = 2.0;  // violates b1 > b2 > b3
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = cfg;
  bad.potential_kind = "sombrero";
  CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("both solution routes agree on a small scenario") {
  ScenarioConfig cfg;
  cfg.n = 32;
  cfg.extent = 6.0;
  cfg.amplitude = 0.1;
  cfg.t_final = 0.25;
  cfg.tolerance = 5e-2;
  CompareRun run = run_compare(cfg);
  CHECK(run.report.pass);
  CHECK(run.report.rel_l2_all < cfg.tolerance);
  CHECK(!run.ist.timings.seconds.empty());
  CHECK(!run.timings.seconds.empty());
}

TEST_CASE("comparison reports are bitwise reproducible across thread counts") {
  ScenarioConfig cfg;
  cfg.n = 32;
  cfg.t_final = 0.25;
  omp_set_num_threads(1);
  CompareRun one = run_compare(cfg);
  omp_set_num_threads(4);
  CompareRun four = run_compare(cfg);
  omp_set_num_threads(1);
  CHECK(one.report.to_text() == four.report.to_text());
  CHECK(one.report.to_text().find("rel_l2_all") != std::string::npos);
}

TEST_CASE("round-trip error decays at second order") {
  ScenarioConfig cfg;
  cfg.amplitude = 0.15;
  ConvergenceReport rep = roundtrip_convergence(cfg, {32, 64});
  CHECK(rep.rows.size() == 2);
  CHECK(rep.rows[0].err > rep.rows[1].err);
  CHECK(rep.order > 1.7);
  CHECK(rep.order < 2.6);
}

TEST_CASE("order estimation needs at least two positive samples") {
  CHECK_THROWS_AS(estimate_order({{32, 0.1}}), UsageError);
  CHECK_THROWS_AS(estimate_order({{32, 0.0}, {64, 0.1}}), UsageError);
  std::vector<ConvergenceRow> rows = {{33, 4e-2}, {65, 1e-2}};
  CHECK(estimate_order(rows) == doctest::Approx(2.0));
}

TEST_CASE("operator verification report carries all residuals") {
  ScenarioConfig cfg;
  cfg.n = 32;
  cfg.t_final = 0.2;
  LaxReport rep = verify_lax(cfg);
  CHECK(rep.constraint_defect < 1e-12);
  CHECK(rep.commutator.l2 > 0);
  CHECK(rep.lemma1.term_scale > 0);
  CHECK(rep.lemma1.lhs_l2 / rep.lemma1.term_scale < 0.1);
  const std::string text = rep.to_text();
  CHECK(text.find("constraint_defect") != std::string::npos);
  CHECK(text.find("lemma1_term_scale") != std::string::npos);
}
