#include "bca/classic.hpp"

#include <algorithm>

#include "bca/error.hpp"

namespace bca {

namespace {

void require_independent(const Instance& inst, const char* what) {
  if (inst.is_correlated()) throw Error(ErrorCode::CorrelatedUnsupported, std::string(what) + " needs independent bidders");
}

// Per tuple: the bidder with the largest curve value wins if that value is at
// least zero, ties to the lowest index. Monotone whenever every curve is
// non-decreasing.
AllocationMatrix allocate_by_curves(const Instance& inst, const std::vector<std::vector<Rational>>& curves) {
  const TupleIndexer idx(inst.shape());
  AllocationMatrix a(inst.shape());
  std::vector<std::size_t> coords(idx.rank());
  for (std::size_t t = 0; t < idx.size(); ++t) {
    idx.decode(t, coords);
    int winner = 0;
    const Rational* best = nullptr;
    for (std::size_t b = 0; b < coords.size(); ++b) {
      const Rational& c = curves[b][coords[b]];
      if (best == nullptr || c > *best) {
        best = &c;
        winner = static_cast<int>(b) + 1;
      }
    }
    a[t] = (*best >= 0) ? winner : 0;
  }
  return a;
}

}  // namespace

ObjectivePoint RandomizedMechanism::expected() const {
  ObjectivePoint p{0, 0};
  for (const auto& [m, weight] : components) {
    p.welfare += weight * m.objectives.welfare;
    p.revenue += weight * m.objectives.revenue;
  }
  return p;
}

Mechanism vickrey(const Instance& inst) {
  std::vector<std::vector<Rational>> curves;
  for (std::size_t b = 0; b < inst.num_bidders(); ++b) curves.push_back(inst.marginal(b).values);
  return make_mechanism(allocate_by_curves(inst, curves), inst);
}

VirtualValueTable virtual_values(const Instance& inst) {
  require_independent(inst, "virtual values");
  VirtualValueTable table;
  for (std::size_t b = 0; b < inst.num_bidders(); ++b) {
    const auto& m = inst.marginal(b);
    const std::size_t h = m.size();
    std::vector<Rational> phi(h);
    Rational tail = 0;  // f^{j+1} + ... + f^h
    for (std::size_t j = h; j-- > 0;) {
      phi[j] = (j + 1 == h) ? m.values[j] : m.values[j] - (m.values[j + 1] - m.values[j]) * tail / m.masses[j];
      tail += m.masses[j];
    }
    for (std::size_t j = 1; j < h; ++j) {
      if (phi[j] < phi[j - 1]) table.regular = false;
    }
    table.phi.push_back(std::move(phi));
  }
  return table;
}

std::vector<Rational> iron_curve(const std::vector<Rational>& curve, const std::vector<Rational>& masses) {
  struct Block {
    Rational weighted_sum;
    Rational mass;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t j = 0; j < curve.size(); ++j) {
    blocks.push_back({curve[j] * masses[j], masses[j], 1});
    while (blocks.size() > 1) {
      const Block& last = blocks.back();
      const Block& prev = blocks[blocks.size() - 2];
      // prev average > last average, cross-multiplied (masses are positive)
      if (prev.weighted_sum * last.mass <= last.weighted_sum * prev.mass) break;
      Block merged{prev.weighted_sum + last.weighted_sum, prev.mass + last.mass, prev.count + last.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::vector<Rational> ironed;
  ironed.reserve(curve.size());
  for (const auto& block : blocks) {
    const Rational level = block.weighted_sum / block.mass;
    ironed.insert(ironed.end(), block.count, level);
  }
  return ironed;
}

IronedCurve iron(const VirtualValueTable& vv, const Instance& inst) {
  IronedCurve out;
  for (std::size_t b = 0; b < vv.phi.size(); ++b) out.values.push_back(iron_curve(vv.phi[b], inst.marginal(b).masses));
  return out;
}

Mechanism myerson(const Instance& inst) {
  require_independent(inst, "myerson");
  const auto ironed = iron(virtual_values(inst), inst);
  return make_mechanism(allocate_by_curves(inst, ironed.values), inst);
}

Mechanism lambda_optimal(const Instance& inst, const Rational& lambda) {
  require_independent(inst, "lambda_optimal");
  if (lambda < 0) throw Error(ErrorCode::NegativeLambda, "lambda = " + format_rational(lambda));
  const auto vv = virtual_values(inst);
  std::vector<std::vector<Rational>> curves;
  for (std::size_t b = 0; b < inst.num_bidders(); ++b) {
    const auto& m = inst.marginal(b);
    std::vector<Rational> combined(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) combined[j] = vv.phi[b][j] + lambda * m.values[j];
    curves.push_back(iron_curve(combined, m.masses));
  }
  return make_mechanism(allocate_by_curves(inst, curves), inst);
}

Rational welfare_saturation_lambda(const Instance& inst) {
  // Every welfare value is a multiple of 1/den, so a welfare shortfall costs at
  // least lambda/den while revenue can gain at most max_value.
  const TupleIndexer idx(inst.shape());
  std::vector<std::size_t> coords(idx.rank());
  BigInt den = 1;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    idx.decode(t, coords);
    for (std::size_t b = 0; b < coords.size(); ++b) {
      const Rational term = inst.mass_at(t) * inst.value(b, coords[b]);
      den = lcm(den, term.get_den());
    }
  }
  return Rational(1) + inst.max_value() * Rational(den);
}

namespace {

void refine_hull(const Instance& inst, const Mechanism& left, const Mechanism& right, std::vector<Mechanism>& out) {
  const auto& p = left.objectives;
  const auto& q = right.objectives;
  if (p.welfare >= q.welfare) return;
  const Rational slope = (p.revenue - q.revenue) / (q.welfare - p.welfare);
  if (slope < 0) return;
  Mechanism mid = lambda_optimal(inst, slope);
  const auto& m = mid.objectives;
  if (m.revenue + slope * m.welfare <= p.revenue + slope * p.welfare) return;
  refine_hull(inst, left, mid, out);
  out.push_back(mid);
  refine_hull(inst, mid, right, out);
}

}  // namespace

std::vector<Mechanism> tradeoff_hull(const Instance& inst) {
  require_independent(inst, "tradeoff_hull");
  Mechanism left = lambda_optimal(inst, 0);
  Mechanism right = lambda_optimal(inst, welfare_saturation_lambda(inst));
  std::vector<Mechanism> hull;
  hull.push_back(left);
  if (right.objectives.welfare == left.objectives.welfare) return hull;
  refine_hull(inst, left, right, hull);
  hull.push_back(std::move(right));
  return hull;
}

RandomizedMechanism randomized_tradeoff(const Instance& inst, const Rational& target_welfare) {
  const auto hull = tradeoff_hull(inst);
  const auto& lo = hull.front().objectives.welfare;
  const auto& hi = hull.back().objectives.welfare;
  if (target_welfare < lo || target_welfare > hi) {
    throw Error(ErrorCode::TargetOutOfRange, "target welfare " + format_rational(target_welfare) + " outside [" +
                                                 format_rational(lo) + ", " + format_rational(hi) + "]");
  }
  RandomizedMechanism mix;
  for (std::size_t v = 0; v < hull.size(); ++v) {
    const Rational& w = hull[v].objectives.welfare;
    if (w == target_welfare) {
      mix.components.emplace_back(hull[v], Rational(1));
      return mix;
    }
    if (w > target_welfare) {
      const auto& a = hull[v - 1];
      const auto& b = hull[v];
      const Rational weight_a =
          (b.objectives.welfare - target_welfare) / (b.objectives.welfare - a.objectives.welfare);
      mix.components.emplace_back(a, weight_a);
      mix.components.emplace_back(b, 1 - weight_a);
      return mix;
    }
  }
  return mix;  // unreachable: target <= hi
}

}  // namespace bca
