#include <gtest/gtest.h>

#include "gmt/experiments/registry.hpp"

using namespace gmt;
using namespace gmt::experiments;

namespace {

ExperimentConfig quick(const std::string& name, Json params, std::uint64_t seed = 42) {
  return ExperimentConfig::from_json(name, Json{{"seed", seed}, {"params", std::move(params)}});
}

}  // namespace

TEST(Registry, NamesAndSchemas) {
  std::set<std::string> names;
  for (const auto& e : registry()) {
    EXPECT_TRUE(names.insert(e.name).second) << e.name;
    const auto schema = e.schema();
    EXPECT_FALSE(schema.empty()) << e.name;
    EXPECT_NO_THROW(Params(schema, Json::object())) << e.name;
    EXPECT_TRUE(describe(schema).is_array());
  }
  EXPECT_EQ(names.size(), 9u);
  EXPECT_THROW(find_experiment("nope"), DomainError);
}

TEST(Config, Validation) {
  EXPECT_EQ(ExperimentConfig::from_json("cc_axis", Json()).seed, 42u);
  EXPECT_EQ(ExperimentConfig::from_json("cc_axis", Json{{"seed", 7}}).seed, 7u);
  EXPECT_THROW(ExperimentConfig::from_json("cc_axis", Json{{"experiment", "ratio_bound"}}), DomainError);
  EXPECT_THROW(ExperimentConfig::from_json("cc_axis", Json{{"seed", -1}}), DomainError);
  EXPECT_THROW(ExperimentConfig::from_json("cc_axis", Json{{"colour", 1}}), DomainError);
  EXPECT_THROW(ExperimentConfig::from_json("cc_axis", Json{{"params", 3}}), DomainError);
}

TEST(Params, Validation) {
  const Schema schema{{"n", ParamSpec::Kind::count, 4, 1, 10, ""},
                      {"x", ParamSpec::Kind::number, 0.5, 0.0, 1.0, ""},
                      {"ladder", ParamSpec::Kind::ladder, Json::array({0.5, 0.25}), 0.01, 1.0, ""}};
  const Params defaults(schema, Json::object());
  EXPECT_EQ(defaults.count("n"), 4u);
  EXPECT_EQ(defaults.number("x"), 0.5);
  EXPECT_EQ(defaults.ladder("ladder"), (std::vector<double>{0.5, 0.25}));
  EXPECT_THROW(Params(schema, Json{{"n", 11}}), DomainError);
  EXPECT_THROW(Params(schema, Json{{"n", 1.5}}), DomainError);
  EXPECT_THROW(Params(schema, Json{{"x", "a"}}), DomainError);
  EXPECT_THROW(Params(schema, Json{{"ladder", {0.25, 0.5}}}), DomainError);
  EXPECT_THROW(Params(schema, Json{{"ladder", Json::array()}}), DomainError);
  EXPECT_THROW(Params(schema, Json{{"y", 1}}), DomainError);
  EXPECT_THROW(run_experiment("cc_axis", quick("cc_axis", Json{{"taus", {0.1, 0.2}}})), DomainError);
}

TEST(Report, Rules) {
  Report r("x", ExperimentConfig{}, Json::object());
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.close("a", 1.01, 0.001, 1.0, 0.02));
  EXPECT_FALSE(r.close("b", 1.01, 0.02, 1.0, 0.02));  // uncertainty over half the band
  EXPECT_FALSE(r.close("c", 1.05, 0.0, 1.0, 0.02));
  EXPECT_TRUE(r.greater("d", 2.0, 0.1, 1.0));
  EXPECT_FALSE(r.greater("e", 2.0, 0.6, 1.0));
  EXPECT_TRUE(r.at_most("f", 1.0, 1.0));
  EXPECT_FALSE(r.passed());
  const auto j = r.to_json();
  for (const char* key : {"schema_version", "experiment", "seed", "inputs", "quantities", "criteria", "notes", "tables",
                          "passed", "wall_clock_seconds"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["criteria"].size(), 6u);
  EXPECT_FALSE(strip_timing(j).contains("wall_clock_seconds"));
}

TEST(Experiments, MetricAxiomsQuick) {
  const auto report = run_experiment("metric_axioms", quick("metric_axioms", Json{{"samples", 50}}));
  EXPECT_TRUE(report.passed()) << report.to_json().dump(2);
  const auto csv = report.to_csv();
  EXPECT_EQ(csv.rfind("table,row,column,value\n", 0), 0u);
}

TEST(Experiments, Deterministic) {
  const auto cfg = quick("federer_inequalities", Json{{"instances", 10}}, 7);
  const auto a = run_experiment("federer_inequalities", cfg);
  const auto b = run_experiment("federer_inequalities", cfg);
  EXPECT_TRUE(a.passed()) << a.to_json().dump(2);
  EXPECT_EQ(strip_timing(a.to_json()), strip_timing(b.to_json()));
  const auto c = run_experiment("federer_inequalities", quick("federer_inequalities", Json{{"instances", 10}}, 8));
  EXPECT_NE(strip_timing(a.to_json())["tables"], strip_timing(c.to_json())["tables"]);
}

TEST(Experiments, CCAxisQuick) {
  const auto report = run_experiment("cc_axis", quick("cc_axis", Json{{"taus", {0.5, 0.05}}}));
  EXPECT_TRUE(report.passed()) << report.to_json().dump(2);
}
