#pragma once

// Experiment configuration (validated parameters with documented bounds) and
// the machine-readable report every experiment produces.

#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmt/error.hpp"
#include "gmt/io/json.hpp"

namespace gmt::experiments {

using io::Json;

inline constexpr int kSchemaVersion = 1;

// One tunable parameter of an experiment.
struct ParamSpec {
  enum class Kind { number, count, ladder };
  std::string name;
  Kind kind = Kind::number;
  Json fallback;
  double min = 0.0;
  double max = 0.0;
  std::string doc;
};

using Schema = std::vector<ParamSpec>;

inline std::string to_string(ParamSpec::Kind k) {
  switch (k) {
    case ParamSpec::Kind::number:
      return "number";
    case ParamSpec::Kind::count:
      return "count";
    case ParamSpec::Kind::ladder:
      return "ladder";
  }
  return "?";
}

inline Json describe(const Schema& schema) {
  Json out = Json::array();
  for (const auto& p : schema) {
    out.push_back({{"name", p.name}, {"kind", to_string(p.kind)}, {"default", p.fallback}, {"min", p.min}, {"max", p.max},
                   {"doc", p.doc}});
  }
  return out;
}

inline bool is_count(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

// Config document: {"seed": 42, "params": {...}}; an optional "experiment"
// key must match the experiment being run.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 42;
  Json params = Json::object();

  static ExperimentConfig from_json(const std::string& experiment, const Json& j) {
    ExperimentConfig c;
    c.experiment = experiment;
    if (j.is_null()) return c;
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "experiment") {
        if (value != experiment) throw DomainError("config is for experiment '" + value.dump() + "'");
      } else if (key == "seed") {
        if (!is_count(value)) throw DomainError("seed must be a nonnegative integer");
        c.seed = value.get<std::uint64_t>();
      } else if (key == "params") {
        if (!value.is_object()) throw DomainError("params must be an object");
        c.params = value;
      } else {
        throw DomainError("unknown config key '" + key + "'");
      }
    }
    return c;
  }
};

// Parameters resolved against a schema: defaults filled in, bounds checked,
// unknown keys rejected.
class Params {
 public:
  Params(const Schema& schema, const Json& given) {
    std::set<std::string> known;
    for (const auto& p : schema) {
      known.insert(p.name);
      const Json& v = given.contains(p.name) ? given.at(p.name) : p.fallback;
      resolved_[p.name] = check(p, v);
    }
    for (const auto& [key, value] : given.items()) {
      if (!known.count(key)) throw DomainError("unknown parameter '" + key + "'");
    }
  }

  double number(const std::string& name) const { return resolved_.at(name).get<double>(); }
  std::size_t count(const std::string& name) const { return resolved_.at(name).get<std::size_t>(); }
  std::vector<double> ladder(const std::string& name) const { return resolved_.at(name).get<std::vector<double>>(); }
  const Json& json() const { return resolved_; }

 private:
  static Json check(const ParamSpec& p, const Json& v) {
    auto in_range = [&](double x) {
      if (!(x >= p.min && x <= p.max)) {
        std::ostringstream msg;
        msg << "parameter '" << p.name << "' = " << x << " outside [" << p.min << ", " << p.max << "]";
        throw DomainError(msg.str());
      }
    };
    switch (p.kind) {
      case ParamSpec::Kind::number:
        if (!v.is_number()) throw DomainError("parameter '" + p.name + "' must be a number");
        in_range(v.get<double>());
        return v;
      case ParamSpec::Kind::count:
        if (!is_count(v)) throw DomainError("parameter '" + p.name + "' must be a nonnegative integer");
        in_range(static_cast<double>(v.get<std::uint64_t>()));
        return v;
      case ParamSpec::Kind::ladder: {
        if (!v.is_array() || v.empty()) throw DomainError("parameter '" + p.name + "' must be a nonempty array");
        double prev = kInf;
        for (const auto& e : v) {
          if (!e.is_number()) throw DomainError("parameter '" + p.name + "' must hold numbers");
          const double x = e.get<double>();
          in_range(x);
          if (!(x < prev)) throw DomainError("parameter '" + p.name + "' must be strictly decreasing");
          prev = x;
        }
        return v;
      }
    }
    return v;
  }

  Json resolved_ = Json::object();
};

struct Quantity {
  std::string name;
  double value = 0.0;
  double uncertainty = 0.0;
  std::string provenance;
};

// A pass/fail line. `tolerance` is the band the comparison is held to; the
// comparison only passes if the measured uncertainty is at most half the band.
struct Criterion {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  double uncertainty = 0.0;
  std::string rule;
  std::string detail;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

class Report {
 public:
  Report(std::string experiment, const ExperimentConfig& config, Json params)
      : experiment_(std::move(experiment)), seed_(config.seed), params_(std::move(params)) {}

  const std::string& experiment() const { return experiment_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Quantity>& quantities() const { return quantities_; }
  const std::vector<Criterion>& criteria() const { return criteria_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::vector<Table>& tables() const { return tables_; }

  void quantity(std::string name, double value, double uncertainty, std::string provenance) {
    quantities_.push_back({std::move(name), value, uncertainty, std::move(provenance)});
  }

  const Quantity& find(const std::string& name) const {
    for (const auto& q : quantities_)
      if (q.name == name) return q;
    throw Error("report has no quantity '" + name + "'");
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }

  Table& table(std::string name, std::vector<std::string> columns) {
    tables_.push_back({std::move(name), std::move(columns), {}});
    return tables_.back();
  }

  // |measured - reference| <= tol * |reference| (relative) or <= tol (absolute).
  bool close(std::string name, double measured, double uncertainty, double reference, double tol, bool relative = true,
             std::string detail = {}) {
    const double band = relative ? tol * std::abs(reference) : tol;
    const bool ok = std::isfinite(measured) && std::abs(measured - reference) <= band && uncertainty <= 0.5 * band;
    criteria_.push_back({std::move(name), ok, measured, reference, tol, uncertainty,
                         relative ? "relative_error<=tol" : "absolute_error<=tol", std::move(detail)});
    return ok;
  }

  // measured > reference by more than `tol`; uncertainty must be under half of the margin.
  bool greater(std::string name, double measured, double uncertainty, double reference, double tol = 0.0,
               std::string detail = {}) {
    const double margin = measured - reference;
    const bool ok = margin > tol && (margin <= 0.0 || uncertainty <= 0.5 * margin);
    criteria_.push_back({std::move(name), ok, measured, reference, tol, uncertainty, "measured-reference>tol",
                         std::move(detail)});
    return ok;
  }

  // measured <= reference + tol.
  bool at_most(std::string name, double measured, double reference, double tol = 0.0, std::string detail = {}) {
    const bool ok = measured <= reference + tol;
    criteria_.push_back({std::move(name), ok, measured, reference, tol, 0.0, "measured<=reference+tol", std::move(detail)});
    return ok;
  }

  bool check(std::string name, bool ok, std::string detail = {}) {
    criteria_.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, 0.0, 0.0, "boolean", std::move(detail)});
    return ok;
  }

  void fail(std::string name, std::string detail) { check(std::move(name), false, std::move(detail)); }

  bool passed() const {
    if (criteria_.empty()) return false;
    for (const auto& c : criteria_)
      if (!c.passed) return false;
    return true;
  }

  void set_wall_clock(double seconds) { wall_clock_ = seconds; }
  double wall_clock() const { return wall_clock_; }

  Json to_json() const {
    Json q = Json::array();
    for (const auto& x : quantities_) {
      q.push_back({{"name", x.name},
                   {"value", io::number(x.value)},
                   {"uncertainty", io::number(x.uncertainty)},
                   {"provenance", x.provenance}});
    }
    Json c = Json::array();
    for (const auto& x : criteria_) {
      c.push_back({{"name", x.name},
                   {"passed", x.passed},
                   {"measured", io::number(x.measured)},
                   {"reference", io::number(x.reference)},
                   {"tolerance", io::number(x.tolerance)},
                   {"uncertainty", io::number(x.uncertainty)},
                   {"rule", x.rule},
                   {"detail", x.detail}});
    }
    Json t = Json::object();
    for (const auto& x : tables_) t[x.name] = {{"columns", x.columns}, {"rows", x.rows}};
    return {{"schema_version", kSchemaVersion},
            {"experiment", experiment_},
            {"seed", seed_},
            {"inputs", {{"experiment", experiment_}, {"seed", seed_}, {"params", params_}}},
            {"quantities", q},
            {"criteria", c},
            {"notes", notes_},
            {"tables", t},
            {"passed", passed()},
            {"wall_clock_seconds", wall_clock_}};
  }

  // Long-format CSV of every table and quantity: table,row,column,value.
  std::string to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "table,row,column,value\n";
    auto cell = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (std::size_t i = 0; i < quantities_.size(); ++i) {
      out << "quantities," << i << ",name," << quantities_[i].name << "\n";
      out << "quantities," << i << ",value," << cell(io::number(quantities_[i].value)) << "\n";
      out << "quantities," << i << ",uncertainty," << cell(io::number(quantities_[i].uncertainty)) << "\n";
    }
    for (const auto& t : tables_) {
      for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t k = 0; k < t.columns.size() && k < t.rows[r].size(); ++k)
          out << t.name << "," << r << "," << t.columns[k] << "," << cell(t.rows[r][k]) << "\n";
    }
    return out.str();
  }

 private:
  std::string experiment_;
  std::uint64_t seed_;
  Json params_;
  std::vector<Quantity> quantities_;
  std::vector<Criterion> criteria_;
  std::vector<std::string> notes_;
  std::vector<Table> tables_;
  double wall_clock_ = 0.0;
};

// Report JSON without the wall-clock field, for determinism comparisons.
inline Json strip_timing(Json report) {
  report.erase("wall_clock_seconds");
  return report;
}

}  // namespace gmt::experiments
