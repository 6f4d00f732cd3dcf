#pragma once

#include <cmath>
#include <map>
#include <string>

#include "gmt/error.hpp"
#include "gmt/sets.hpp"

namespace gmt {

enum class SizeKind { hausdorff, spherical, table };

inline std::string to_string(SizeKind k) {
  switch (k) {
    case SizeKind::hausdorff:
      return "hausdorff";
    case SizeKind::spherical:
      return "spherical";
    case SizeKind::table:
      return "table";
  }
  return "?";
}

// zeta(S) = c diam(S)^alpha on closed sets (hausdorff) or on closed balls only
// (spherical), or an explicit table of extended reals keyed by set id.
struct SizeFunction {
  SizeKind kind = SizeKind::hausdorff;
  double alpha = 1.0;
  double c = 1.0;
  std::map<std::string, double> table;

  static SizeFunction hausdorff(double alpha, double c = 1.0) { return make(SizeKind::hausdorff, alpha, c); }
  static SizeFunction spherical(double alpha, double c = 1.0) { return make(SizeKind::spherical, alpha, c); }
  static SizeFunction from_table(std::map<std::string, double> entries) {
    for (const auto& [id, v] : entries)
      if (!(v >= 0.0)) throw DomainError("size table entry '" + id + "' is negative");
    SizeFunction z;
    z.kind = SizeKind::table;
    z.table = std::move(entries);
    return z;
  }

  bool parametric() const { return kind != SizeKind::table; }
  bool balls_only() const { return kind == SizeKind::spherical; }

  double of_diameter(double diameter) const {
    if (!parametric()) throw DomainError("table size functions have no diameter formula");
    if (diameter == 0.0) return 0.0;
    return c * std::pow(diameter, alpha);
  }

 private:
  static SizeFunction make(SizeKind kind, double alpha, double c) {
    if (!(alpha > 0.0) || !(c > 0.0)) throw DomainError("size function needs alpha > 0 and c > 0");
    SizeFunction z;
    z.kind = kind;
    z.alpha = alpha;
    z.c = c;
    return z;
  }
};

inline double size_value(const SizeFunction& z, const MetricSpec& space, const SetRep& s) {
  if (!z.parametric()) throw DomainError("table size functions are evaluated by set id");
  if (z.balls_only() && !is_ball(s)) throw DomainError("spherical size function evaluated on a set that is not a closed ball");
  if (z.balls_only() && !std::get<BallDescriptor>(s).closed) {
    throw DomainError("spherical size function evaluated on an open ball");
  }
  return z.of_diameter(set_diameter(space, s).value);
}

inline double size_value(const SizeFunction& z, const std::string& set_id) {
  if (z.parametric()) throw DomainError("parametric size functions are evaluated on sets, not ids");
  auto it = z.table.find(set_id);
  if (it == z.table.end()) throw DomainError("set '" + set_id + "' is not in the size table");
  return it->second;
}

}  // namespace gmt
