#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bca/instance.hpp"
#include "bca/mechanism.hpp"
#include "bca/pareto.hpp"

namespace bca {

struct EnumerationLimits {
  std::size_t generic_max_tuples = 16;  // product of support sizes, generic path
  std::size_t pair_max_support = 6;     // h1, h2 on the two-bidder path
};

/// Two-bidder canonical parametrization: bidder 1 wins column j from row
/// t1[j] up, bidder 2 wins row i from column t2[i] up. Threshold h means never.
struct ThresholdPair {
  std::vector<std::size_t> t1;  // per column, in [0, h1]
  std::vector<std::size_t> t2;  // per row, in [0, h2]

  /// No cell claimed by both bidders.
  bool compatible() const;
  AllocationMatrix to_matrix() const;
};

using MatrixVisitor = std::function<void(const AllocationMatrix&)>;

/// Visits every feasible allocation matrix exactly once. Two bidders use the
/// threshold-pair path, anything else the generic path.
/// Errors: LimitExceeded.
void enumerate_feasible(const Instance& inst, const MatrixVisitor& visit, const EnumerationLimits& limits = {});

/// Generic path: depth-first assignment of winners in tuple order, pruned by
/// the monotonicity constraint. Visits exactly the monotone matrices.
void enumerate_generic(const Instance& inst, const MatrixVisitor& visit, const EnumerationLimits& limits = {});

/// Two-bidder path over compatible threshold pairs.
void enumerate_threshold_pairs(const Instance& inst, const std::function<void(const ThresholdPair&)>& visit,
                               const EnumerationLimits& limits = {});

std::size_t count_feasible(const Instance& inst, const EnumerationLimits& limits = {});

/// Objective point of every feasible mechanism, in enumeration order.
std::vector<ObjectivePoint> oracle_cloud(const Instance& inst, const EnumerationLimits& limits = {});

struct OraclePareto {
  /// Handles index `matrices`.
  ParetoSet front;
  std::vector<AllocationMatrix> matrices;
};

/// Exact Pareto set of all feasible mechanisms, pruned while streaming.
OraclePareto oracle_pareto(const Instance& inst, const EnumerationLimits& limits = {});

struct SingleBidderPoint {
  std::size_t price_index = 0;  // h = no sale
  ObjectivePoint point;
};

struct SingleBidderCurve {
  std::vector<SingleBidderPoint> points;  // price index 0..h
  bool pareto_convex = true;
};

/// All h + 1 posted prices of a single bidder and whether their Pareto subset
/// is convex (no Pareto point strictly below the chord of its neighbours).
/// Errors: ArityError.
SingleBidderCurve single_bidder_curve(const Instance& inst);

/// Whether a Pareto set (welfare ascending) is convex in the above sense.
bool is_convex_front(const ParetoSet& front);

}  // namespace bca
