#include "bca/fptas.hpp"

#include <algorithm>
#include <stdexcept>

#include "bca/classic.hpp"
#include "bca/error.hpp"
#include "bca/exact_dp.hpp"
#include "bca/pareto.hpp"

namespace bca {

GapAnswer gap_query(const Instance& inst, const GapQuery& query) {
  if (inst.num_bidders() != 2) {
    throw Error(ErrorCode::ArityError, "gap_query needs 2 bidders, got " + std::to_string(inst.num_bidders()));
  }
  if (query.bound.welfare <= 0 || query.bound.revenue <= 0) {
    throw Error(ErrorCode::NonPositiveBound, "bound must be positive in both coordinates");
  }
  if (query.delta <= 0) throw Error(ErrorCode::NonPositiveDelta, "delta = " + format_rational(query.delta));

  // Each peel path adds at most h1 + h2 floored terms, so the loss per
  // coordinate stays below a quarter of delta times the bound.
  const Rational paths(4 * static_cast<long>(inst.support_size(0) + inst.support_size(1)));
  const Rounding grid{query.delta * query.bound.welfare / paths, query.delta * query.bound.revenue / paths};

  GapAnswer answer;
  answer.mechanism = find_dominating(inst, query.bound, grid);
  if (answer.mechanism && !dominates(answer.mechanism->objectives, query.bound)) {
    throw std::logic_error("rounded witness fails to dominate the bound");
  }
  return answer;
}

EpsParetoResult eps_pareto(const Instance& inst, const Rational& eps) {
  if (inst.num_bidders() != 2) {
    throw Error(ErrorCode::ArityError, "eps_pareto needs 2 bidders, got " + std::to_string(inst.num_bidders()));
  }
  if (eps <= 0) throw Error(ErrorCode::NonPositiveEps, "eps = " + format_rational(eps));

  EpsParetoResult result;
  result.upper = inst.objective_upper_bound();
  result.lower = Rational(1) / Rational(contribution_tables(inst).scale);

  // The welfare-maximal end covers every point of zero revenue.
  std::vector<Mechanism> found;
  found.push_back(vickrey(inst));

  if (result.upper > 0) {
    // (1 + delta)^2 <= 1 + eps keeps two grid steps inside one eps step.
    const Rational delta = std::min<Rational>(eps / 4, Rational(2));
    const Rational ratio = 1 + delta;
    std::vector<Rational> levels;
    for (Rational g = result.lower / ratio; g <= result.upper; g *= ratio) levels.push_back(g);

    // Staircase over the grid: a NoCertificate at (a, r) rules out level r for
    // every welfare level above a, so the revenue index only moves down.
    std::size_t r = levels.size();
    for (std::size_t a = 0; a < levels.size() && r > 0; ++a) {
      while (r > 0) {
        ++result.gap_calls;
        GapAnswer ans = gap_query(inst, GapQuery{ObjectivePoint{levels[a], levels[r - 1]}, delta});
        if (ans.found()) {
          found.push_back(std::move(*ans.mechanism));
          break;
        }
        --r;
      }
    }
  }

  std::vector<ParetoEntry> entries;
  for (std::size_t h = 0; h < found.size(); ++h) entries.push_back({found[h].objectives, h});
  for (const auto& e : pareto_filter(entries).points) result.mechanisms.push_back(found[e.handle]);
  return result;
}

}  // namespace bca
