#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bca/instance.hpp"
#include "bca/mechanism.hpp"
#include "bca/rational.hpp"

namespace bca {

enum class Objective { Welfare, Revenue, Joint };

/// Dense (h1 + 1) x (h2 + 1) table; index h is the no-sale sentinel.
template <typename T>
class SentinelGrid {
 public:
  SentinelGrid() = default;
  SentinelGrid(std::size_t h1, std::size_t h2, const T& fill = T()) : cols_(h2 + 1), data_((h1 + 1) * (h2 + 1), fill) {}

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Single-bidder pricing contributions, scaled to integers by `scale`.
///
/// w1(k, j) / r1(k, j): welfare / revenue from bidder 1 (rows) when column j
/// is priced at v1[k], i.e. sums over rows k..h1-1 of column j.
/// w2(i, k) / r2(i, k): the same for bidder 2 (columns) in row i priced at v2[k].
/// Indices are 0-based; k = h1 (resp. h2) is the no-sale sentinel.
struct ContributionTables {
  std::size_t h1 = 0;
  std::size_t h2 = 0;
  BigInt scale = 1;
  SentinelGrid<Rational> exact_w1, exact_r1, exact_w2, exact_r2;
  SentinelGrid<BigInt> w1, r1, w2, r2;

  Rational descale(const BigInt& v) const { return Rational(v) / Rational(scale); }
};

/// Errors: ArityError (n != 2).
ContributionTables contribution_tables(const Instance& inst);

/// Floor grids: each contribution is floored to a multiple of the unit before
/// accumulation. Both units must be positive.
struct Rounding {
  Rational welfare_unit;
  Rational revenue_unit;
};

/// Scaled objective pair. Single-objective runs leave the other field at 0.
struct DPKey {
  BigInt welfare;
  BigInt revenue;

  friend bool operator==(const DPKey&, const DPKey&) = default;
  friend bool operator<(const DPKey& a, const DPKey& b) {
    if (a.welfare != b.welfare) return a.welfare < b.welfare;
    return a.revenue < b.revenue;
  }
};

struct DPKeyHash {
  std::size_t operator()(const DPKey& key) const noexcept;
};

/// Which peel produced a value: row i priced for bidder 2, column j priced for
/// bidder 1, or both with cell (i, j) left unsold.
enum class PeelTerm : std::uint8_t { Row, Column, Both };

struct Witness {
  PeelTerm term = PeelTerm::Row;
  std::size_t bidder1_threshold = 0;  // row threshold for column j (Column, Both)
  std::size_t bidder2_threshold = 0;  // column threshold for row i (Row, Both)
  DPKey predecessor;
};

/// Per-subproblem sets of achievable scaled values with witness links.
/// Cell (i, j) covers rows i..h1-1 and columns j..h2-1 (0-based).
class DPValueSet {
 public:
  Objective objective() const noexcept { return objective_; }
  std::size_t h1() const noexcept { return h1_; }
  std::size_t h2() const noexcept { return h2_; }
  /// Objective value represented by one integer unit.
  const Rational& welfare_unit() const noexcept { return welfare_unit_; }
  const Rational& revenue_unit() const noexcept { return revenue_unit_; }

  const std::unordered_map<DPKey, Witness, DPKeyHash>& cell(std::size_t i, std::size_t j) const {
    return cells_(i, j);
  }
  /// Stored keys of a cell, ascending.
  std::vector<DPKey> keys(std::size_t i, std::size_t j) const;
  bool contains(const DPKey& key) const { return cells_(0, 0).count(key) > 0; }

  /// De-scaled values at the root for single-objective runs, ascending.
  std::vector<Rational> values() const;
  /// De-scaled (welfare, revenue) pairs at the root for joint runs, ascending.
  std::vector<std::pair<Rational, Rational>> pairs() const;

  /// Allocation matrix realizing `key` at cell (i, j), on the full instance shape.
  AllocationMatrix reconstruct(const DPKey& key, std::size_t i = 0, std::size_t j = 0) const;

  friend DPValueSet achievable_values(const Instance&, Objective, const std::optional<Rounding>&);

 private:
  Objective objective_ = Objective::Welfare;
  std::size_t h1_ = 0;
  std::size_t h2_ = 0;
  Rational welfare_unit_;
  Rational revenue_unit_;
  SentinelGrid<std::unordered_map<DPKey, Witness, DPKeyHash>> cells_;
};

/// Runs the three-term peel recurrence over all subproblems.
/// Without rounding, the root holds exactly the objective values of all
/// feasible mechanisms. Errors: ArityError.
DPValueSet achievable_values(const Instance& inst, Objective objective,
                             const std::optional<Rounding>& rounding = std::nullopt);

/// A feasible mechanism with welfare (or revenue) exactly `target`, if any.
/// Errors: ArityError; Objective::Joint is rejected with ArityError as well.
std::optional<Mechanism> exact_witness(const Instance& inst, Objective objective, const Rational& target);

/// Joint recurrence keeping only the per-cell Pareto frontier of values
/// saturated at the bound. A rounded value reaching the bound in both
/// coordinates is returned first; failing that, rounded values within the
/// largest possible rounding loss are evaluated exactly and returned only when
/// they truly dominate. Nothing is returned only if no rounded value reaches
/// the bound. Without rounding the answer is exact. Errors: ArityError.
std::optional<Mechanism> find_dominating(const Instance& inst, const ObjectivePoint& bound,
                                         const std::optional<Rounding>& rounding = std::nullopt);

}  // namespace bca
