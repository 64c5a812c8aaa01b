#include "bca/exact_dp.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "bca/error.hpp"
#include "bca/pareto.hpp"

namespace bca {

namespace {

void require_two_bidders(const Instance& inst) {
  if (inst.num_bidders() != 2) {
    throw Error(ErrorCode::ArityError, "the peel recurrence needs exactly 2 bidders, got " +
                                           std::to_string(inst.num_bidders()));
  }
}

struct UnitTables {
  SentinelGrid<BigInt> w1, r1, w2, r2;
};

UnitTables to_units(const ContributionTables& ct, const Rational& welfare_unit, const Rational& revenue_unit) {
  UnitTables u{SentinelGrid<BigInt>(ct.h1, ct.h2), SentinelGrid<BigInt>(ct.h1, ct.h2),
               SentinelGrid<BigInt>(ct.h1, ct.h2), SentinelGrid<BigInt>(ct.h1, ct.h2)};
  for (std::size_t i = 0; i <= ct.h1; ++i) {
    for (std::size_t j = 0; j <= ct.h2; ++j) {
      u.w1(i, j) = floor_div(ct.exact_w1(i, j), welfare_unit);
      u.r1(i, j) = floor_div(ct.exact_r1(i, j), revenue_unit);
      u.w2(i, j) = floor_div(ct.exact_w2(i, j), welfare_unit);
      u.r2(i, j) = floor_div(ct.exact_r2(i, j), revenue_unit);
    }
  }
  return u;
}

struct Peel {
  PeelTerm term;
  std::size_t k1;  // bidder 1 row threshold
  std::size_t k2;  // bidder 2 column threshold
  DPKey gain;
  std::size_t pred_i;
  std::size_t pred_j;
};

// All peels of cell (i, j) in witness-priority order: Row before Column before
// Both, thresholds ascending, sentinel last.
std::vector<Peel> peels_of(const UnitTables& u, std::size_t h1, std::size_t h2, std::size_t i, std::size_t j,
                           bool use_welfare, bool use_revenue) {
  auto gain = [&](const BigInt& w, const BigInt& r) {
    return DPKey{use_welfare ? w : BigInt(0), use_revenue ? r : BigInt(0)};
  };
  std::vector<Peel> out;
  for (std::size_t k = j; k <= h2; ++k) {
    out.push_back({PeelTerm::Row, h1, k, gain(u.w2(i, k), u.r2(i, k)), i + 1, j});
  }
  for (std::size_t k = i; k <= h1; ++k) {
    out.push_back({PeelTerm::Column, k, h2, gain(u.w1(k, j), u.r1(k, j)), i, j + 1});
  }
  for (std::size_t k = i + 1; k <= h1; ++k) {
    for (std::size_t l = j + 1; l <= h2; ++l) {
      out.push_back({PeelTerm::Both, k, l, gain(u.w1(k, j) + u.w2(i, l), u.r1(k, j) + u.r2(i, l)), i + 1, j + 1});
    }
  }
  return out;
}

void apply_peel(AllocationMatrix& a, std::size_t h1, std::size_t h2, std::size_t i, std::size_t j, PeelTerm term,
                std::size_t k1, std::size_t k2) {
  if (term == PeelTerm::Row || term == PeelTerm::Both) {
    for (std::size_t c = k2; c < h2; ++c) a.at(i, c) = 2;
  }
  if (term == PeelTerm::Column || term == PeelTerm::Both) {
    for (std::size_t r = k1; r < h1; ++r) a.at(r, j) = 1;
  }
}

std::pair<std::size_t, std::size_t> next_cell(PeelTerm term, std::size_t i, std::size_t j) {
  switch (term) {
    case PeelTerm::Row: return {i + 1, j};
    case PeelTerm::Column: return {i, j + 1};
    case PeelTerm::Both: return {i + 1, j + 1};
  }
  return {i, j};
}

}  // namespace

std::size_t DPKeyHash::operator()(const DPKey& key) const noexcept {
  const BigIntHash h;
  return h(key.welfare) * 0x100000001b3ULL ^ h(key.revenue);
}

ContributionTables contribution_tables(const Instance& inst) {
  require_two_bidders(inst);
  ContributionTables ct;
  ct.h1 = inst.support_size(0);
  ct.h2 = inst.support_size(1);
  const std::size_t h1 = ct.h1;
  const std::size_t h2 = ct.h2;
  ct.exact_w1 = ct.exact_r1 = ct.exact_w2 = ct.exact_r2 = SentinelGrid<Rational>(h1, h2, Rational(0));

  // Bidder 1 pricing column j at v1[k]: tails over rows k..h1-1.
  for (std::size_t j = 0; j < h2; ++j) {
    Rational tail_mass = 0;
    Rational tail_welfare = 0;
    for (std::size_t k = h1; k-- > 0;) {
      tail_mass += inst.mass2(k, j);
      tail_welfare += inst.mass2(k, j) * inst.value(0, k);
      ct.exact_w1(k, j) = tail_welfare;
      ct.exact_r1(k, j) = inst.value(0, k) * tail_mass;
    }
  }
  // Bidder 2 pricing row i at v2[k]: tails over columns k..h2-1.
  for (std::size_t i = 0; i < h1; ++i) {
    Rational tail_mass = 0;
    Rational tail_welfare = 0;
    for (std::size_t k = h2; k-- > 0;) {
      tail_mass += inst.mass2(i, k);
      tail_welfare += inst.mass2(i, k) * inst.value(1, k);
      ct.exact_w2(i, k) = tail_welfare;
      ct.exact_r2(i, k) = inst.value(1, k) * tail_mass;
    }
  }

  BigInt scale = 1;
  for (std::size_t i = 0; i <= h1; ++i) {
    for (std::size_t j = 0; j <= h2; ++j) {
      for (const auto* grid : {&ct.exact_w1, &ct.exact_r1, &ct.exact_w2, &ct.exact_r2}) {
        scale = lcm(scale, (*grid)(i, j).get_den());
      }
    }
  }
  ct.scale = scale;
  const UnitTables u = to_units(ct, Rational(1, 1) / Rational(scale), Rational(1, 1) / Rational(scale));
  ct.w1 = u.w1;
  ct.r1 = u.r1;
  ct.w2 = u.w2;
  ct.r2 = u.r2;
  return ct;
}

std::vector<DPKey> DPValueSet::keys(std::size_t i, std::size_t j) const {
  std::vector<DPKey> out;
  out.reserve(cells_(i, j).size());
  for (const auto& [key, witness] : cells_(i, j)) out.push_back(key);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> DPValueSet::values() const {
  std::vector<Rational> out;
  for (const auto& key : keys(0, 0)) {
    out.push_back(objective_ == Objective::Revenue ? Rational(key.revenue) * revenue_unit_
                                                   : Rational(key.welfare) * welfare_unit_);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Rational, Rational>> DPValueSet::pairs() const {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& key : keys(0, 0)) {
    out.emplace_back(Rational(key.welfare) * welfare_unit_, Rational(key.revenue) * revenue_unit_);
  }
  return out;
}

AllocationMatrix DPValueSet::reconstruct(const DPKey& key, std::size_t i, std::size_t j) const {
  AllocationMatrix a({h1_, h2_});
  DPKey current = key;
  while (i < h1_ && j < h2_) {
    const auto& cell = cells_(i, j);
    const auto it = cell.find(current);
    if (it == cell.end()) throw std::invalid_argument("value not stored in the table");
    const Witness& w = it->second;
    apply_peel(a, h1_, h2_, i, j, w.term, w.bidder1_threshold, w.bidder2_threshold);
    std::tie(i, j) = next_cell(w.term, i, j);
    current = w.predecessor;
  }
  return a;
}

DPValueSet achievable_values(const Instance& inst, Objective objective, const std::optional<Rounding>& rounding) {
  require_two_bidders(inst);
  const ContributionTables ct = contribution_tables(inst);
  DPValueSet set;
  set.objective_ = objective;
  set.h1_ = ct.h1;
  set.h2_ = ct.h2;
  set.welfare_unit_ = rounding ? rounding->welfare_unit : Rational(1) / Rational(ct.scale);
  set.revenue_unit_ = rounding ? rounding->revenue_unit : Rational(1) / Rational(ct.scale);
  const UnitTables u = to_units(ct, set.welfare_unit_, set.revenue_unit_);
  const bool use_welfare = objective != Objective::Revenue;
  const bool use_revenue = objective != Objective::Welfare;
  const std::size_t h1 = ct.h1;
  const std::size_t h2 = ct.h2;

  set.cells_ = SentinelGrid<std::unordered_map<DPKey, Witness, DPKeyHash>>(h1, h2);
  for (std::size_t i = 0; i <= h1; ++i) set.cells_(i, h2).emplace(DPKey{0, 0}, Witness{});
  for (std::size_t j = 0; j < h2; ++j) set.cells_(h1, j).emplace(DPKey{0, 0}, Witness{});

  SentinelGrid<std::vector<DPKey>> sorted(h1, h2);
  for (std::size_t i = 0; i <= h1; ++i) sorted(i, h2) = {DPKey{0, 0}};
  for (std::size_t j = 0; j < h2; ++j) sorted(h1, j) = {DPKey{0, 0}};

  for (std::size_t i = h1; i-- > 0;) {
    for (std::size_t j = h2; j-- > 0;) {
      auto& cell = set.cells_(i, j);
      for (const Peel& p : peels_of(u, h1, h2, i, j, use_welfare, use_revenue)) {
        for (const DPKey& pred : sorted(p.pred_i, p.pred_j)) {
          DPKey value{pred.welfare + p.gain.welfare, pred.revenue + p.gain.revenue};
          cell.try_emplace(std::move(value), Witness{p.term, p.k1, p.k2, pred});
        }
      }
      sorted(i, j) = set.keys(i, j);
    }
  }
  return set;
}

std::optional<Mechanism> exact_witness(const Instance& inst, Objective objective, const Rational& target) {
  require_two_bidders(inst);
  if (objective == Objective::Joint) throw Error(ErrorCode::ArityError, "exact_witness takes a single objective");
  const ContributionTables ct = contribution_tables(inst);
  const Rational scaled = target * Rational(ct.scale);
  if (scaled.get_den() != 1 || scaled < 0) return std::nullopt;
  const DPValueSet set = achievable_values(inst, objective);
  const DPKey key = objective == Objective::Welfare ? DPKey{scaled.get_num(), 0} : DPKey{0, scaled.get_num()};
  if (!set.contains(key)) return std::nullopt;
  return make_mechanism(set.reconstruct(key), inst);
}

std::optional<Mechanism> find_dominating(const Instance& inst, const ObjectivePoint& bound,
                                         const std::optional<Rounding>& rounding) {
  require_two_bidders(inst);
  const ContributionTables ct = contribution_tables(inst);
  const Rational welfare_unit = rounding ? rounding->welfare_unit : Rational(1) / Rational(ct.scale);
  const Rational revenue_unit = rounding ? rounding->revenue_unit : Rational(1) / Rational(ct.scale);
  const UnitTables u = to_units(ct, welfare_unit, revenue_unit);
  const BigInt cap_w = std::max(BigInt(0), ceil_div(bound.welfare, welfare_unit));
  const BigInt cap_r = std::max(BigInt(0), ceil_div(bound.revenue, revenue_unit));
  const std::size_t h1 = ct.h1;
  const std::size_t h2 = ct.h2;

  struct Entry {
    DPKey value;
    Witness witness;
  };
  // Frontier per cell: welfare ascending, revenue strictly descending.
  SentinelGrid<std::vector<Entry>> frontier(h1, h2);
  for (std::size_t i = 0; i <= h1; ++i) frontier(i, h2) = {Entry{DPKey{0, 0}, Witness{}}};
  for (std::size_t j = 0; j < h2; ++j) frontier(h1, j) = {Entry{DPKey{0, 0}, Witness{}}};

  for (std::size_t i = h1; i-- > 0;) {
    for (std::size_t j = h2; j-- > 0;) {
      std::vector<Entry> candidates;
      for (const Peel& p : peels_of(u, h1, h2, i, j, true, true)) {
        for (const Entry& pred : frontier(p.pred_i, p.pred_j)) {
          DPKey value{std::min(cap_w, BigInt(pred.value.welfare + p.gain.welfare)),
                      std::min(cap_r, BigInt(pred.value.revenue + p.gain.revenue))};
          candidates.push_back({std::move(value), Witness{p.term, p.k1, p.k2, pred.value}});
        }
      }
      std::stable_sort(candidates.begin(), candidates.end(), [](const Entry& a, const Entry& b) {
        if (a.value.welfare != b.value.welfare) return a.value.welfare > b.value.welfare;
        return a.value.revenue > b.value.revenue;
      });
      std::vector<Entry> kept;
      for (auto& c : candidates) {
        if (!kept.empty() && c.value.revenue <= kept.back().value.revenue) continue;
        kept.push_back(std::move(c));
      }
      std::reverse(kept.begin(), kept.end());
      frontier(i, j) = std::move(kept);
    }
  }

  auto rebuild = [&](DPKey current) {
    AllocationMatrix a({h1, h2});
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < h1 && j < h2) {
      const auto& cell = frontier(i, j);
      const auto it = std::find_if(cell.begin(), cell.end(), [&](const Entry& e) { return e.value == current; });
      const Witness& w = it->witness;
      apply_peel(a, h1, h2, i, j, w.term, w.bidder1_threshold, w.bidder2_threshold);
      std::tie(i, j) = next_cell(w.term, i, j);
      current = w.predecessor;
    }
    return a;
  };

  const auto& root = frontier(0, 0);
  const auto hit = std::find_if(root.begin(), root.end(), [&](const Entry& e) {
    return e.value.welfare >= cap_w && e.value.revenue >= cap_r;
  });
  if (hit != root.end()) return make_mechanism(rebuild(hit->value), inst);
  if (!rounding) return std::nullopt;

  // Floors lose less than one unit per peel, so a mechanism reaching the bound
  // may sit up to h1 + h2 units short of the caps. Check those exactly.
  const BigInt window(static_cast<unsigned long>(h1 + h2));
  for (const Entry& e : root) {
    if (e.value.welfare + window < cap_w || e.value.revenue + window < cap_r) continue;
    AllocationMatrix a = rebuild(e.value);
    if (dominates(evaluate(a, inst), bound)) return make_mechanism(std::move(a), inst);
  }
  return std::nullopt;
}

}  // namespace bca
