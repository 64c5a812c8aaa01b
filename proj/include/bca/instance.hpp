#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bca/rational.hpp"

namespace bca {

/// One bidder's discrete valuation distribution: values[k] has mass masses[k].
struct MarginalDistribution {
  std::vector<Rational> values;
  std::vector<Rational> masses;

  std::size_t size() const noexcept { return values.size(); }
};

/// Unvalidated instance description as read from a file or built by hand.
/// `masses` may be left empty for a bidder when `joint` is given; the marginal
/// is then derived from the joint table.
struct RawInstance {
  std::vector<MarginalDistribution> bidders;
  /// Row-major h1 x h2 joint mass table (two bidders only).
  std::optional<std::vector<std::vector<Rational>>> joint;
};

/// A validated auction instance. Immutable once built.
///
/// Valuation tuples are addressed by flat row-major index with bidder 0 as the
/// most significant coordinate, so for two bidders tuple (i, j) sits at
/// i * h2 + j and "rows" are bidder 0's support indices.
class Instance {
 public:
  std::size_t num_bidders() const noexcept { return marginals_.size(); }
  std::size_t support_size(std::size_t bidder) const { return marginals_.at(bidder).size(); }
  const MarginalDistribution& marginal(std::size_t bidder) const { return marginals_.at(bidder); }
  const Rational& value(std::size_t bidder, std::size_t k) const { return marginals_[bidder].values[k]; }
  bool is_correlated() const noexcept { return joint_.has_value(); }

  /// Support sizes (h_1, ..., h_n).
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t num_tuples() const noexcept { return num_tuples_; }

  /// Probability of the valuation tuple with the given coordinates.
  Rational mass(std::span<const std::size_t> coords) const;
  /// Probability of the tuple at a flat index (cached).
  const Rational& mass_at(std::size_t flat) const { return tuple_mass_[flat]; }
  /// Joint mass of two-bidder tuple (i, j). Works for both product and joint instances.
  const Rational& mass2(std::size_t i, std::size_t j) const { return tuple_mass_[i * shape_[1] + j]; }

  const std::optional<std::vector<Rational>>& joint() const noexcept { return joint_; }

  /// Largest support value over all bidders.
  Rational max_value() const;
  /// Sum over tuples of mass times the largest value in the tuple; bounds both objectives.
  Rational objective_upper_bound() const;

  friend Instance validate_instance(const RawInstance& raw);

 private:
  Instance() = default;

  std::vector<MarginalDistribution> marginals_;
  std::optional<std::vector<Rational>> joint_;
  std::vector<std::size_t> shape_;
  std::size_t num_tuples_ = 0;
  std::vector<Rational> tuple_mass_;
};

/// Checks every instance invariant and returns the validated instance.
/// Errors: NonIncreasingSupport, NonPositiveMass, NegativeValue, MassNotOne,
/// JointMarginalMismatch, JointArityError, ShapeMismatch (ragged input).
Instance validate_instance(const RawInstance& raw);

/// Convenience: independent instance from (values, masses) per bidder.
Instance make_independent(std::vector<MarginalDistribution> bidders);

/// Convenience: two-bidder correlated instance; marginals derived from the joint table.
Instance make_joint(std::vector<Rational> values1, std::vector<Rational> values2,
                    std::vector<std::vector<Rational>> joint);

/// Same instance with every support value multiplied by `factor` (> 0).
Instance scale_values(const Instance& inst, const Rational& factor);

/// Row-major strides and coordinate decoding for a tuple space.
class TupleIndexer {
 public:
  explicit TupleIndexer(std::vector<std::size_t> shape);

  std::size_t size() const noexcept { return size_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  std::size_t flat(std::span<const std::size_t> coords) const;
  std::size_t coord(std::size_t flat, std::size_t axis) const {
    return (flat / strides_[axis]) % shape_[axis];
  }
  void decode(std::size_t flat, std::span<std::size_t> coords) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

}  // namespace bca
