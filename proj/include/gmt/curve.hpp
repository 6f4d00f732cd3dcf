#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "gmt/metric.hpp"

namespace gmt {

// A C^1 parametrized curve in a coordinate space. Either coordinate-affine
// (s -> origin + s * direction) or the cubic Hermite interpolant of sampled
// positions and derivatives.
class Curve {
 public:
  enum class Kind { affine, hermite };

  static Curve affine(const Point& origin, const Point& direction) {
    if (origin.dim == 0 || origin.dim != direction.dim) throw DomainError("affine curve needs matching coordinate points");
    Curve c;
    c.kind_ = Kind::affine;
    c.origin_ = origin;
    c.direction_ = direction;
    return c;
  }

  static Curve hermite(std::vector<double> nodes, std::vector<Point> positions, std::vector<Point> derivatives) {
    if (nodes.size() < 2) throw DomainError("sampled curve needs at least two nodes");
    if (positions.size() != nodes.size() || derivatives.size() != nodes.size()) {
      throw DomainError("sampled curve arrays differ in length");
    }
    if (!std::is_sorted(nodes.begin(), nodes.end()) ||
        std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
      throw DomainError("sampled curve nodes must be strictly increasing");
    }
    const std::size_t dim = positions.front().dim;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (positions[i].dim != dim || derivatives[i].dim != dim || dim == 0) {
        throw DomainError("sampled curve points have inconsistent dimension");
      }
    }
    Curve c;
    c.kind_ = Kind::hermite;
    auto data = std::make_shared<Samples>();
    data->nodes = std::move(nodes);
    data->positions = std::move(positions);
    data->derivatives = std::move(derivatives);
    c.samples_ = std::move(data);
    return c;
  }

  Kind kind() const { return kind_; }
  std::size_t dim() const { return kind_ == Kind::affine ? origin_.dim : samples_->positions.front().dim; }
  const Point& origin() const { return origin_; }
  const Point& direction() const { return direction_; }
  const std::vector<double>& nodes() const { return samples_->nodes; }
  const std::vector<Point>& node_positions() const { return samples_->positions; }
  const std::vector<Point>& node_derivatives() const { return samples_->derivatives; }

  // Parameter range where the curve is defined; affine curves are unbounded.
  double lo() const { return kind_ == Kind::affine ? -kInf : samples_->nodes.front(); }
  double hi() const { return kind_ == Kind::affine ? kInf : samples_->nodes.back(); }

  Point at(double s) const {
    if (kind_ == Kind::affine) {
      Point p = origin_;
      for (std::size_t i = 0; i < p.dim; ++i) p.x[i] += s * direction_.x[i];
      return p;
    }
    return interpolate(s, false);
  }

  Point tangent(double s) const {
    if (kind_ == Kind::affine) return direction_;
    return interpolate(s, true);
  }

 private:
  struct Samples {
    std::vector<double> nodes;
    std::vector<Point> positions;
    std::vector<Point> derivatives;
  };

  Point interpolate(double s, bool derivative) const {
    const auto& n = samples_->nodes;
    if (s < n.front() || s > n.back()) throw DomainError("curve parameter out of range");
    auto it = std::upper_bound(n.begin(), n.end(), s);
    std::size_t k = it == n.end() ? n.size() - 2 : static_cast<std::size_t>(it - n.begin()) - 1;
    k = std::min(k, n.size() - 2);
    const double h = n[k + 1] - n[k];
    const double u = (s - n[k]) / h;
    const Point& p0 = samples_->positions[k];
    const Point& p1 = samples_->positions[k + 1];
    const Point& m0 = samples_->derivatives[k];
    const Point& m1 = samples_->derivatives[k + 1];
    Point out = p0;
    const double u2 = u * u;
    const double u3 = u2 * u;
    for (std::size_t i = 0; i < p0.dim; ++i) {
      if (!derivative) {
        out.x[i] = (2 * u3 - 3 * u2 + 1) * p0.x[i] + (u3 - 2 * u2 + u) * h * m0.x[i] + (-2 * u3 + 3 * u2) * p1.x[i] +
                   (u3 - u2) * h * m1.x[i];
      } else {
        out.x[i] = ((6 * u2 - 6 * u) * p0.x[i] + (-6 * u2 + 6 * u) * p1.x[i]) / h + (3 * u2 - 4 * u + 1) * m0.x[i] +
                   (3 * u2 - 2 * u) * m1.x[i];
      }
    }
    return out;
  }

  Kind kind_ = Kind::affine;
  Point origin_;
  Point direction_;
  std::shared_ptr<const Samples> samples_;
};

}  // namespace gmt
