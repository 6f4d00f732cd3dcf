#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmt/error.hpp"
#include "gmt/heisenberg/group.hpp"

namespace gmt {

inline constexpr std::size_t kMaxDim = 8;
inline constexpr std::size_t kNoLabel = std::numeric_limits<std::size_t>::max();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A point of a coordinate space (dim > 0) or a label of a finite space (dim == 0).
struct Point {
  std::array<double, kMaxDim> x{};
  std::size_t dim = 0;
  std::size_t label = kNoLabel;

  static Point coords(std::initializer_list<double> values) {
    if (values.size() == 0 || values.size() > kMaxDim) throw DomainError("point dimension out of range");
    Point p;
    std::copy(values.begin(), values.end(), p.x.begin());
    p.dim = values.size();
    return p;
  }
  static Point coords(std::span<const double> values) {
    if (values.empty() || values.size() > kMaxDim) throw DomainError("point dimension out of range");
    Point p;
    std::copy(values.begin(), values.end(), p.x.begin());
    p.dim = values.size();
    return p;
  }
  static Point of_label(std::size_t label) {
    Point p;
    p.label = label;
    return p;
  }
  static Point of(const heisenberg::HPoint& h) { return coords({h.x, h.y, h.t}); }

  bool is_label() const { return dim == 0; }
  double operator[](std::size_t i) const { return x[i]; }
  double& operator[](std::size_t i) { return x[i]; }
  heisenberg::HPoint h() const { return {x[0], x[1], x[2]}; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim != b.dim || a.label != b.label) return false;
    return std::equal(a.x.begin(), a.x.begin() + static_cast<std::ptrdiff_t>(a.dim), b.x.begin());
  }
};

// Symmetric, zero-diagonal distance table satisfying the triangle inequality.
class FiniteTable {
 public:
  FiniteTable(std::vector<std::string> labels, std::vector<std::vector<double>> distances, double tolerance = 1e-12)
      : labels_(std::move(labels)), d_(std::move(distances)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw DomainError("finite space needs at least one label");
    if (d_.size() != n) throw DomainError("distance table must be " + std::to_string(n) + " x " + std::to_string(n));
    for (const auto& row : d_) {
      if (row.size() != n) throw DomainError("distance table is not square");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d_[i][i] != 0.0) throw DomainError("distance table has nonzero diagonal at " + labels_[i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (!(d_[i][j] >= 0.0) || !std::isfinite(d_[i][j])) {
          throw DomainError("distance table entry (" + labels_[i] + "," + labels_[j] + ") is not a finite nonnegative");
        }
        if (d_[i][j] != d_[j][i]) throw DomainError("distance table is asymmetric at (" + labels_[i] + "," + labels_[j] + ")");
        if (i != j && d_[i][j] == 0.0) throw DomainError("distinct labels at distance zero: " + labels_[i] + "," + labels_[j]);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (d_[i][k] > d_[i][j] + d_[j][k] + tolerance) {
            throw DomainError("triangle inequality fails on (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")");
          }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& distances() const { return d_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i][j]; }

  std::size_t index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw DomainError("unknown label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> d_;
};

enum class SpaceKind { euclidean, koranyi, cc_heisenberg, finite };

struct MetricSpec {
  SpaceKind kind = SpaceKind::euclidean;
  std::size_t dim = 2;
  std::shared_ptr<const FiniteTable> table;
  double cc_tolerance = 1e-8;

  static MetricSpec euclidean(std::size_t dim) {
    if (dim == 0 || dim > kMaxDim) throw DomainError("euclidean dimension out of range");
    return {SpaceKind::euclidean, dim, nullptr};
  }
  static MetricSpec koranyi() { return {SpaceKind::koranyi, 3, nullptr}; }
  static MetricSpec cc(double tolerance = 1e-8) {
    if (!(tolerance > 0.0)) throw DomainError("CC tolerance must be positive");
    return {SpaceKind::cc_heisenberg, 3, nullptr, tolerance};
  }
  static MetricSpec finite(FiniteTable table) {
    return {SpaceKind::finite, 0, std::make_shared<const FiniteTable>(std::move(table))};
  }

  bool is_heisenberg() const { return kind == SpaceKind::koranyi || kind == SpaceKind::cc_heisenberg; }
  // Spaces with dilations and translations, where balls of every radius are
  // images of the unit ball.
  bool is_homogeneous() const { return kind != SpaceKind::finite; }

  std::string name() const {
    switch (kind) {
      case SpaceKind::euclidean:
        return "euclidean" + std::to_string(dim);
      case SpaceKind::koranyi:
        return "koranyi";
      case SpaceKind::cc_heisenberg:
        return "cc";
      case SpaceKind::finite:
        return "finite";
    }
    return "?";
  }
};

inline void check_point(const MetricSpec& space, const Point& p) {
  if (space.kind == SpaceKind::finite) {
    if (!p.is_label() || p.label >= space.table->size()) throw DomainError("unknown label for finite space");
  } else if (p.dim != space.dim) {
    throw DomainError("point of dimension " + std::to_string(p.dim) + " used in " + space.name());
  }
}

inline double distance_unchecked(const MetricSpec& space, const Point& p, const Point& q) {
  switch (space.kind) {
    case SpaceKind::euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < space.dim; ++i) {
        const double d = p.x[i] - q.x[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case SpaceKind::koranyi:
      return heisenberg::koranyi_distance(p.h(), q.h());
    case SpaceKind::cc_heisenberg:
      return heisenberg::cc_distance(p.h(), q.h(), space.cc_tolerance);
    case SpaceKind::finite:
      return (*space.table)(p.label, q.label);
  }
  return 0.0;
}

inline double distance(const MetricSpec& space, const Point& p, const Point& q) {
  check_point(space, p);
  check_point(space, q);
  return distance_unchecked(space, p, q);
}

struct BallDescriptor {
  Point center;
  double radius = 0.0;
  bool closed = true;
};

inline bool ball_contains(const MetricSpec& space, const BallDescriptor& ball, const Point& p) {
  if (!(ball.radius >= 0.0)) throw DomainError("ball radius must be nonnegative");
  const double d = distance(space, ball.center, p);
  return ball.closed ? d <= ball.radius : d < ball.radius;
}

// Norm-like distance to the identity (origin).
inline Point origin(const MetricSpec& space) {
  if (!space.is_homogeneous()) throw DomainError("finite spaces have no origin");
  Point p;
  p.dim = space.dim;
  return p;
}

// x * delta_r(u): the image of the unit-ball point u in the ball of radius r
// around x. Euclidean: x + r u.
inline Point offset_point(const MetricSpec& space, const Point& x, const Point& u, double r) {
  if (space.is_heisenberg()) return Point::of(heisenberg::multiply(x.h(), heisenberg::dilate(u.h(), r)));
  if (space.kind == SpaceKind::euclidean) {
    Point out = x;
    for (std::size_t i = 0; i < space.dim; ++i) out.x[i] += r * u.x[i];
    return out;
  }
  throw DomainError("offset_point needs a homogeneous space");
}

// Half-widths of a coordinate box containing the closed unit ball at the origin.
inline std::array<double, kMaxDim> unit_ball_box(const MetricSpec& space) {
  std::array<double, kMaxDim> box{};
  switch (space.kind) {
    case SpaceKind::euclidean:
      for (std::size_t i = 0; i < space.dim; ++i) box[i] = 1.0;
      break;
    case SpaceKind::koranyi:
      box = {1.0, 1.0, 0.25};
      break;
    case SpaceKind::cc_heisenberg:
      // highest point of the unit sphere: total turning pi, t = 1/(2 pi)
      box = {1.0, 1.0, 0.5 / std::numbers::pi};
      break;
    case SpaceKind::finite:
      throw DomainError("finite spaces have no unit ball box");
  }
  return box;
}

}  // namespace gmt
