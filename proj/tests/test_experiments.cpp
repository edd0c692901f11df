#include <doctest.h>

#include <cmath>
#include <sstream>

#include "twlab/experiments.hpp"

using namespace twlab::experiments;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string csv_of(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  write_records_csv(out, records);
  return out.str();
}

TrialRecord record(const std::string& model, std::size_t n, std::optional<int> upper) {
  TrialRecord r;
  r.model = model;
  r.n = n;
  r.params = "m_attach=1";
  r.tw_upper = upper;
  return r;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("config parsing") {
    const auto cfg = parse(
        "# sweep\n"
        "model = gnm\n"
        "n_list = 10, 12\n"
        "c = 1.5  # edge density\n"
        "trials = 4\n"
        "seed = 9\n"
        "methods = exact, min-degree\n");
    CHECK(cfg.model == Model::gnm);
    CHECK(cfg.n_list == std::vector<std::size_t>{10, 12});
    CHECK(cfg.c == 1.5);
    CHECK(cfg.trials == 4);
    CHECK(cfg.seed == 9);
    CHECK(cfg.methods == std::vector<Method>{Method::exact, Method::min_degree});
  }

  TEST_CASE("config errors name the field") {
    try {
      parse("model = gnm\nn_list = 10\nbogus = 1\n");
      FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
    try {
      parse("model = rig\nn_list = 10\np = 2\n");
      FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("p") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("model = gnm\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("model = nope\nn_list = 5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("model = gnm\nn_list = 5\nmethods = magic\n"), std::invalid_argument);
  }

  TEST_CASE("exact run on small gnm") {
    ExperimentConfig cfg;
    cfg.model = Model::gnm;
    cfg.n_list = {10};
    cfg.c = 1.0;
    cfg.trials = 10;
    cfg.methods = {Method::exact};
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 10);
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(records[i].trial == i);
      CHECK(records[i].outcome == "ok");
      REQUIRE(records[i].tw_exact.has_value());
      CHECK(*records[i].tw_exact >= 0);
      CHECK(*records[i].tw_exact <= 9);
      CHECK(records[i].elapsed_ms == 0);
    }
  }

  TEST_CASE("output does not depend on thread count") {
    for (Model model : {Model::gnm, Model::gnm_rep, Model::rig, Model::ba, Model::conditional}) {
      ExperimentConfig cfg;
      cfg.model = model;
      cfg.n_list = {12, 16};
      cfg.trials = 6;
      cfg.seed = 42;
      cfg.m_attach = 2;
      cfg.methods = {Method::min_fill, Method::min_degree, Method::degeneracy, Method::exact};
      const auto one = csv_of(run_experiment(cfg, 1));
      CHECK(one == csv_of(run_experiment(cfg, 4)));
      CHECK(one == csv_of(run_experiment(cfg, 3)));
    }
  }

  TEST_CASE("bounds bracket the exact value") {
    ExperimentConfig cfg;
    cfg.n_list = {14};
    cfg.trials = 30;
    cfg.c = 1.3;
    cfg.methods = {Method::exact, Method::min_fill, Method::min_degree, Method::degeneracy};
    for (const auto& r : run_experiment(cfg, 2)) {
      REQUIRE(r.tw_lower.has_value());
      REQUIRE(r.tw_upper.has_value());
      REQUIRE(r.tw_exact.has_value());
      CHECK(*r.tw_lower <= *r.tw_exact);
      CHECK(*r.tw_exact <= *r.tw_upper);
    }
  }

  TEST_CASE("exact beyond the cap is recorded, not fatal") {
    ExperimentConfig cfg;
    cfg.n_list = {40};
    cfg.methods = {Method::exact, Method::min_fill};
    const auto r = run_experiment(cfg).at(0);
    CHECK_FALSE(r.tw_exact.has_value());
    CHECK(r.outcome == "resource-limit:exact");
    CHECK(r.tw_upper.has_value());
  }

  TEST_CASE("conditional model records I") {
    ExperimentConfig cfg;
    cfg.model = Model::conditional;
    cfg.n_list = {30};
    cfg.trials = 3;
    cfg.c = 0.0;
    cfg.methods = {Method::degeneracy};
    const auto spec = conditional_partition(cfg, 30);
    CHECK(spec.separator == 3);
    CHECK(spec.a + spec.b + spec.separator == 30);
    for (const auto& r : run_experiment(cfg)) {
      REQUIRE(r.i_value.has_value());
      CHECK(*r.i_value == static_cast<double>(spec.b));
    }
  }

  TEST_CASE("conditional stats with no edges") {
    const auto st = conditional_I_stats(20, 0, {2, 9, 9}, 3, 5, 1);
    CHECK(st.trials == 5);
    CHECK(st.mean_I == 9.0);
    CHECK(st.stderr_I == 0.0);
    CHECK(st.lipschitz == doctest::Approx(1.5));
  }

  TEST_CASE("summaries") {
    const std::vector<TrialRecord> records{record("ba", 10, 2), record("ba", 10, 4), record("ba", 20, 5),
                                           record("ba", 20, std::nullopt)};
    const auto stats = summarize(records);
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].n == 10);
    CHECK(stats[0].count == 2);
    const auto& upper = stats[0].columns[1];
    CHECK(upper.column == "tw_upper");
    CHECK(upper.count == 2);
    CHECK(upper.mean == 3.0);
    CHECK(upper.stddev == doctest::Approx(std::sqrt(2.0)));
    CHECK(upper.min == 2.0);
    CHECK(upper.max == 4.0);
    CHECK(stats[1].columns[1].count == 1);
    CHECK(stats[1].columns[1].stddev == 0.0);
  }

  TEST_CASE("trial CSV round trip") {
    ExperimentConfig cfg;
    cfg.model = Model::conditional;
    cfg.n_list = {20};
    cfg.trials = 4;
    cfg.c = 0.8;
    cfg.methods = {Method::exact, Method::min_fill};
    const auto records = run_experiment(cfg);
    const std::string text = csv_of(records);
    CHECK(text.rfind(kCsvHeader, 0) == 0);
    std::istringstream in(text);
    CHECK(read_records_csv(in) == records);

    std::istringstream bad(std::string(kCsvHeader) + "\ngnm,10,c=1\n");
    CHECK_THROWS_AS(read_records_csv(bad), std::invalid_argument);
  }

  TEST_CASE("record columns") {
    const auto r = record("gnm", 10, 3);
    CHECK(record_column(r, "n") == 10.0);
    CHECK(record_column(r, "tw_upper") == 3.0);
    CHECK_FALSE(record_column(r, "tw_exact").has_value());
    CHECK_THROWS_AS(record_column(r, "width"), std::invalid_argument);
  }

  TEST_CASE("svg plot") {
    std::vector<TrialRecord> records{record("ba", 10, 2), record("ba", 20, 4), record("gnm", 10, 3),
                                      record("gnm", 20, 6)};
    std::ostringstream out;
    write_plot_svg(out, records, "n", "tw_upper/n");
    const std::string svg = out.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("data-model=\"ba\"") != std::string::npos);
    CHECK(svg.find("data-model=\"gnm\"") != std::string::npos);
    std::size_t lines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
    CHECK(lines == 2);
    CHECK(svg.find(">tw_upper/n<") != std::string::npos);

    std::ostringstream ignored;
    CHECK_THROWS_AS(write_plot_svg(ignored, records, "n", "nope"), std::invalid_argument);
    CHECK_THROWS_AS(write_plot_svg(ignored, records, "nope", "n"), std::invalid_argument);
  }
}
