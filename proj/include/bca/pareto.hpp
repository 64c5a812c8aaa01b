#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bca/mechanism.hpp"
#include "bca/rational.hpp"

namespace bca {

/// p >= q in both coordinates.
bool dominates(const ObjectivePoint& p, const ObjectivePoint& q);

/// p >= q / (1 + eps) componentwise. Errors: NegativeEps.
bool eps_covers(const ObjectivePoint& p, const ObjectivePoint& q, const Rational& eps);

struct ParetoEntry {
  ObjectivePoint point;
  std::size_t handle = 0;
};

/// Undominated points, welfare strictly ascending and revenue strictly descending.
struct ParetoSet {
  std::vector<ParetoEntry> points;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

/// Keeps exactly the undominated points. Coincident points keep the lowest handle.
ParetoSet pareto_filter(std::span<const ParetoEntry> points);

}  // namespace bca
