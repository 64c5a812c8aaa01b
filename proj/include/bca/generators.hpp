#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bca/instance.hpp"
#include "bca/mechanism.hpp"
#include "bca/rational.hpp"

namespace bca {

/// An instance together with the target values its construction promises.
///
/// Constructions that are naturally stated with unit probability masses are
/// normalized to proper distributions; their targets are rescaled by the same
/// factor, recorded in metadata as "mass_scale".
struct GeneratedInstance {
  Instance instance;
  std::vector<std::pair<std::string, Rational>> targets;
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Throws std::out_of_range for unknown names.
  const Rational& target(const std::string& name) const;
  const std::string& meta(const std::string& name) const;
};

/// Two bidders, v1 = (11, 20), v2 = (2, 5), masses (1/3, 2/3) each, independent.
/// Its Pareto set is not convex.
GeneratedInstance gen_nonconvex();

/// Exact-welfare reduction from Partition. `b` holds k >= 2 positive integers in
/// descending order. Target "welfare" is reachable exactly iff `b` splits into
/// two halves of equal sum.
/// Errors: NotDescending, TooSmall.
GeneratedInstance gen_partition_welfare(std::span<const Rational> b);

/// Welfare-and-revenue reduction from Partition over supports of size 2k + 1.
/// `a` is rescaled to sum to 1/100. When `eps_construction` is absent the
/// light-mass parameter is the largest power of 1/2 that keeps the light rows
/// and columns below the resolution of the subset sums.
/// Targets "welfare" and "revenue": some mechanism dominates both iff `a` has
/// an equal-sum split. Errors: TooSmall.
GeneratedInstance gen_partition_bicriterion(std::span<const Rational> a,
                                            const std::optional<Rational>& eps_construction = std::nullopt);

/// Uniform two-bidder family of diagonal mechanisms with opposing welfare and
/// revenue orders: v1 = (i + a_i), v2 = (i), a_i = base^(i-1) / N with
/// N = 1000 (base^k - 1) / (base - 1) + 1. Requires a_i < ((k-i)/(k-i+1)) a_{i+1}
/// and strictly super-increasing a_i. Metadata "prefix_ratio_condition" tells
/// whether a_i < ((k-i)/(2(k-i+1))) a_{i+1} also holds (false for base 3).
/// Errors: TooSmall (k < 2 or base < 2), TooLarge (k > 12).
GeneratedInstance gen_exponential_pareto(std::size_t k, std::size_t base = 3);

/// Mechanism of the exponential family: bidder 2 above the diagonal, bidder 1
/// below, diagonal[i] in {1, 2} on the diagonal.
AllocationMatrix diagonal_mechanism(std::span<const int> diagonal);

/// k binary bidders uniform on {b_i, 2^i} with `b` rescaled to sum 1/100.
/// Target "welfare" is reachable when `b` has an equal-sum split. Errors: TooSmall.
GeneratedInstance gen_binary_partition(std::span<const Rational> b);

}  // namespace bca
