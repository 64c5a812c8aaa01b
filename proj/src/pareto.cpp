#include "bca/pareto.hpp"

#include <algorithm>

#include "bca/error.hpp"

namespace bca {

bool dominates(const ObjectivePoint& p, const ObjectivePoint& q) {
  return p.welfare >= q.welfare && p.revenue >= q.revenue;
}

bool eps_covers(const ObjectivePoint& p, const ObjectivePoint& q, const Rational& eps) {
  if (eps < 0) throw Error(ErrorCode::NegativeEps, "eps = " + format_rational(eps));
  const Rational factor = 1 + eps;
  return p.welfare * factor >= q.welfare && p.revenue * factor >= q.revenue;
}

ParetoSet pareto_filter(std::span<const ParetoEntry> points) {
  std::vector<const ParetoEntry*> order;
  order.reserve(points.size());
  for (const auto& e : points) order.push_back(&e);
  // Welfare descending, then revenue descending, then handle ascending.
  std::sort(order.begin(), order.end(), [](const ParetoEntry* a, const ParetoEntry* b) {
    if (a->point.welfare != b->point.welfare) return a->point.welfare > b->point.welfare;
    if (a->point.revenue != b->point.revenue) return a->point.revenue > b->point.revenue;
    return a->handle < b->handle;
  });
  ParetoSet result;
  const Rational* best_revenue = nullptr;
  for (const ParetoEntry* e : order) {
    if (best_revenue != nullptr && e->point.revenue <= *best_revenue) continue;
    result.points.push_back(*e);
    best_revenue = &e->point.revenue;
  }
  std::reverse(result.points.begin(), result.points.end());
  return result;
}

}  // namespace bca
