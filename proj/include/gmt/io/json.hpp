#pragma once

// JSON forms of spaces, sets, curves, measures and estimates.
//
//   finite space   {"labels": [...], "distances": [[...], ...]}
//   set            {"type": "cloud", "points": [[x, y, ...], ...]}      coordinate spaces
//                  {"type": "cloud", "labels": ["a", ...]}             finite spaces
//                  {"type": "ball", "center": [...] | "a", "radius": r, "closed": true}
//                  {"type": "curve_segment", "curve": <curve>, "interval": [a, b], "samples": n}
//   curve          {"type": "affine", "origin": [...], "direction": [...]}
//                  {"type": "hermite", "nodes": [...], "positions": [[...]], "derivatives": [[...]]}
//   measure        {"type": "weighted_cloud", "points": [...], "weights": [...]}
//                  {"type": "curve", "curve": <curve>, "interval": [a, b], "density": "unit", "nodes": 2048}
//   H^1 curve      {"interval": [a, b], "nodes": [...], "positions": [[x, y, t]], "derivatives": [[...]]}
//
// Non-finite reals are written as the strings "inf", "-inf" and "nan".

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmt/caratheodory/ladder.hpp"
#include "gmt/density.hpp"
#include "gmt/heisenberg/curve.hpp"
#include "gmt/heisenberg/profile.hpp"
#include <json.hpp>

namespace gmt::io {

using Json = nlohmann::json;

inline Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double to_number(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw DomainError(what + " must be a number");
}

inline const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object()) throw DomainError("expected a JSON object with key '" + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw DomainError("missing key '" + key + "'");
  return *it;
}

inline std::vector<double> to_numbers(const Json& j, const std::string& what) {
  if (!j.is_array()) throw DomainError(what + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(to_number(e, what));
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Inline JSON text, or "@path" to read a file.
inline Json parse_json_arg(const std::string& text) {
  if (!text.empty() && text.front() == '@') return read_json_file(text.substr(1));
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("argument is not valid JSON: ") + e.what());
  }
}

// ---- spaces and points ----

inline FiniteTable finite_table_from_json(const Json& j) {
  const auto& labels = field(j, "labels");
  const auto& rows = field(j, "distances");
  if (!labels.is_array() || !rows.is_array()) throw DomainError("labels and distances must be arrays");
  std::vector<std::string> names;
  for (const auto& l : labels) {
    if (!l.is_string()) throw DomainError("labels must be strings");
    names.push_back(l.get<std::string>());
  }
  std::vector<std::vector<double>> d;
  for (const auto& row : rows) d.push_back(to_numbers(row, "distance row"));
  return FiniteTable(std::move(names), std::move(d));
}

inline Json to_json(const FiniteTable& t) { return {{"labels", t.labels()}, {"distances", t.distances()}}; }

inline Point point_from_json(const MetricSpec& space, const Json& j) {
  if (space.kind == SpaceKind::finite) {
    if (!j.is_string()) throw DomainError("finite-space points are labels");
    return Point::of_label(space.table->index_of(j.get<std::string>()));
  }
  const auto v = to_numbers(j, "point");
  if (v.size() != space.dim) {
    throw DomainError("point has " + std::to_string(v.size()) + " coordinates, space needs " + std::to_string(space.dim));
  }
  return Point::coords(std::span<const double>(v));
}

inline Json to_json(const MetricSpec& space, const Point& p) {
  if (p.is_label()) {
    if (space.table && p.label < space.table->size()) return space.table->labels()[p.label];
    return p.label;
  }
  Json a = Json::array();
  for (std::size_t i = 0; i < p.dim; ++i) a.push_back(number(p.x[i]));
  return a;
}

inline Point coords_from_json(const Json& j, const std::string& what) {
  const auto v = to_numbers(j, what);
  return Point::coords(std::span<const double>(v));
}

inline Json coords_json(const Point& p) {
  Json a = Json::array();
  for (std::size_t i = 0; i < p.dim; ++i) a.push_back(number(p.x[i]));
  return a;
}

// ---- curves and sets ----

inline Curve curve_from_json(const Json& j) {
  const auto type = field(j, "type").get<std::string>();
  if (type == "affine") return Curve::affine(coords_from_json(field(j, "origin"), "origin"), coords_from_json(field(j, "direction"), "direction"));
  if (type == "hermite") {
    std::vector<Point> pos;
    std::vector<Point> der;
    for (const auto& p : field(j, "positions")) pos.push_back(coords_from_json(p, "position"));
    for (const auto& d : field(j, "derivatives")) der.push_back(coords_from_json(d, "derivative"));
    return Curve::hermite(to_numbers(field(j, "nodes"), "nodes"), std::move(pos), std::move(der));
  }
  throw DomainError("unknown curve type '" + type + "'");
}

inline Json to_json(const Curve& c) {
  if (c.kind() == Curve::Kind::affine) {
    return {{"type", "affine"}, {"origin", coords_json(c.origin())}, {"direction", coords_json(c.direction())}};
  }
  Json pos = Json::array();
  Json der = Json::array();
  for (const auto& p : c.node_positions()) pos.push_back(coords_json(p));
  for (const auto& d : c.node_derivatives()) der.push_back(coords_json(d));
  return {{"type", "hermite"}, {"nodes", c.nodes()}, {"positions", pos}, {"derivatives", der}};
}

inline std::pair<double, double> interval_from_json(const Json& j) {
  const auto v = to_numbers(j, "interval");
  if (v.size() != 2) throw DomainError("interval must have two entries");
  return {v[0], v[1]};
}

inline SetRep set_from_json(const MetricSpec& space, const Json& j) {
  const auto type = field(j, "type").get<std::string>();
  if (type == "cloud") {
    CloudSet s;
    const auto& pts = j.contains("labels") ? j.at("labels") : field(j, "points");
    if (!pts.is_array()) throw DomainError("cloud points must be an array");
    for (const auto& p : pts) s.points.push_back(point_from_json(space, p));
    return s;
  }
  if (type == "ball") {
    BallDescriptor b;
    b.center = point_from_json(space, field(j, "center"));
    b.radius = to_number(field(j, "radius"), "radius");
    b.closed = j.value("closed", true);
    if (!(b.radius >= 0.0)) throw DomainError("ball radius must be nonnegative");
    return b;
  }
  if (type == "curve_segment") {
    const auto [a, b] = interval_from_json(field(j, "interval"));
    CurveSegment seg{curve_from_json(field(j, "curve")), a, b, field(j, "samples").get<std::size_t>()};
    seg.validate();
    if (seg.curve.dim() != space.dim) throw DomainError("curve dimension does not match the space");
    return seg;
  }
  throw DomainError("unknown set type '" + type + "'");
}

inline Json to_json(const MetricSpec& space, const SetRep& s) {
  if (const auto* c = std::get_if<CloudSet>(&s)) {
    Json pts = Json::array();
    for (const auto& p : c->points) pts.push_back(to_json(space, p));
    return {{"type", "cloud"}, {space.kind == SpaceKind::finite ? "labels" : "points", pts}};
  }
  if (const auto* b = std::get_if<BallDescriptor>(&s)) {
    return {{"type", "ball"}, {"center", to_json(space, b->center)}, {"radius", number(b->radius)}, {"closed", b->closed}};
  }
  const auto& seg = std::get<CurveSegment>(s);
  return {{"type", "curve_segment"}, {"curve", to_json(seg.curve)}, {"interval", {seg.a, seg.b}}, {"samples", seg.samples}};
}

// ---- Heisenberg curve specs ----

inline heisenberg::CurveSpec curve_spec_from_json(const Json& j) {
  heisenberg::CurveSpec spec;
  std::tie(spec.a, spec.b) = interval_from_json(field(j, "interval"));
  spec.nodes = to_numbers(field(j, "nodes"), "nodes");
  for (const auto& p : field(j, "positions")) {
    const auto v = to_numbers(p, "position");
    if (v.size() != 3) throw DomainError("positions are (x, y, t) triples");
    spec.positions.push_back({v[0], v[1], v[2]});
  }
  for (const auto& d : field(j, "derivatives")) {
    const auto v = to_numbers(d, "derivative");
    if (v.size() != 3) throw DomainError("derivatives are 3-vectors");
    spec.derivatives.push_back({v[0], v[1], v[2]});
  }
  if (spec.positions.size() != spec.nodes.size() || spec.derivatives.size() != spec.nodes.size()) {
    throw DomainError("curve arrays differ in length");
  }
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    spec.frame.push_back(heisenberg::frame_decompose(spec.positions[i], spec.derivatives[i]));
  }
  spec.validate(j.value("c1_tolerance", 1e-3));
  return spec;
}

inline Json to_json(const heisenberg::CurveSpec& spec) {
  Json pos = Json::array();
  Json der = Json::array();
  Json frame = Json::array();
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    pos.push_back({spec.positions[i].x, spec.positions[i].y, spec.positions[i].t});
    der.push_back(spec.derivatives[i]);
    frame.push_back({spec.frame[i].h1, spec.frame[i].h2, spec.frame[i].v});
  }
  return {{"interval", {spec.a, spec.b}}, {"nodes", spec.nodes}, {"positions", pos}, {"derivatives", der}, {"frame", frame}};
}

// ---- measures ----

inline CurveDensity curve_density_from_string(const std::string& s) {
  if (s == "unit") return CurveDensity::unit;
  if (s == "euclidean_speed") return CurveDensity::euclidean_speed;
  if (s == "heisenberg_vertical") return CurveDensity::heisenberg_vertical;
  throw DomainError("unknown curve density '" + s + "'");
}

inline MeasureRep measure_from_json(const MetricSpec& space, const Json& j) {
  const auto type = field(j, "type").get<std::string>();
  if (type == "weighted_cloud") {
    std::vector<Point> pts;
    for (const auto& p : field(j, "points")) pts.push_back(point_from_json(space, p));
    return MeasureRep::weighted_cloud(std::move(pts), to_numbers(field(j, "weights"), "weights"));
  }
  if (type == "curve") {
    const auto [a, b] = interval_from_json(field(j, "interval"));
    Curve c = curve_from_json(field(j, "curve"));
    if (c.dim() != space.dim) throw DomainError("curve dimension does not match the space");
    return MeasureRep::curve(std::move(c), a, b, curve_density_from_string(j.value("density", std::string("unit"))),
                             j.value("nodes", std::size_t{2048}));
  }
  throw DomainError("unknown measure type '" + type + "'");
}

// [{"id": "ab", "members": ["a", "b"], "size": 1.5}, ...]; entries without
// "size" get `fallback` applied to their diameter.
inline std::vector<FiniteCandidate> candidates_from_json(const MetricSpec& space, const Json& j, const SizeFunction& fallback) {
  if (space.kind != SpaceKind::finite) throw DomainError("candidates live in finite spaces");
  if (!j.is_array()) throw DomainError("candidates must be an array");
  std::vector<FiniteCandidate> out;
  for (const auto& e : j) {
    FiniteCandidate c;
    c.id = field(e, "id").get<std::string>();
    for (const auto& m : field(e, "members")) c.members.push_back(point_from_json(space, m).label);
    if (c.members.empty()) throw DomainError("candidate '" + c.id + "' is empty");
    c.size = e.contains("size") ? to_number(e.at("size"), "candidate size") : fallback.of_diameter(candidate_diameter(space, c));
    if (!(c.size >= 0.0)) throw DomainError("candidate '" + c.id + "' has a negative size");
    out.push_back(std::move(c));
  }
  return out;
}

// ---- estimates ----

inline Json to_json(const MetricSpec& space, const CoverEstimate& e, bool with_cover = false) {
  Json j{{"value", number(e.value)}, {"delta", e.delta}, {"exact", e.exact}, {"cover_size", e.cover.size()},
         {"evaluations", e.evaluations}};
  j["gap_bound"] = e.gap_bound ? number(*e.gap_bound) : Json(nullptr);
  if (e.uncovered_witness) j["uncovered_witness"] = to_json(space, Point::of_label(*e.uncovered_witness));
  if (with_cover) {
    Json cover = Json::array();
    for (const auto& s : e.cover) cover.push_back(to_json(space, s));
    j["cover"] = cover;
  }
  return j;
}

inline Json to_json(const MetricSpec& space, const MeasureLadder& ladder, bool with_cover = false) {
  Json entries = Json::array();
  for (const auto& e : ladder.entries) entries.push_back(to_json(space, e.estimate, with_cover));
  return {{"entries", entries}, {"extrapolated", number(ladder.extrapolated)}, {"monotone_ok", ladder.monotone_ok}};
}

inline Json to_json(const MetricSpec& space, const DensityEstimate& d) {
  Json ladder = Json::array();
  for (const auto& r : d.ladder) {
    ladder.push_back({{"epsilon", r.epsilon},
                      {"value", number(r.value)},
                      {"argmax", to_json(space, SetRep{r.argmax})},
                      {"evaluations", r.evaluations}});
  }
  return {{"ladder", ladder},
          {"extrapolated", number(d.extrapolated)},
          {"trend", to_string(d.trend)},
          {"uncertainty", number(d.uncertainty())}};
}

inline Json to_json(const heisenberg::AlphaBeta& ab) {
  return {{"alpha", ab.alpha}, {"beta", ab.beta}, {"argmax_radius", ab.argmax_radius}, {"ratio", ab.ratio()}};
}

}  // namespace gmt::io
