#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bca/instance.hpp"
#include "bca/rational.hpp"

namespace bca {

/// Expected (welfare, revenue) of a mechanism, exact.
struct ObjectivePoint {
  Rational welfare;
  Rational revenue;

  friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

/// Winner per valuation tuple, 0 = item not sold, j = bidder j (1-based).
/// Stored row-major in the instance's tuple order.
class AllocationMatrix {
 public:
  AllocationMatrix() = default;
  explicit AllocationMatrix(std::vector<std::size_t> shape, int fill = 0);
  AllocationMatrix(std::vector<std::size_t> shape, std::vector<int> winners);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return winners_.size(); }

  int operator[](std::size_t flat) const { return winners_[flat]; }
  int& operator[](std::size_t flat) { return winners_[flat]; }
  int at(std::size_t i, std::size_t j) const { return winners_[i * shape_[1] + j]; }
  int& at(std::size_t i, std::size_t j) { return winners_[i * shape_[1] + j]; }

  const std::vector<int>& winners() const noexcept { return winners_; }

  friend bool operator==(const AllocationMatrix&, const AllocationMatrix&) = default;
  friend auto operator<=>(const AllocationMatrix&, const AllocationMatrix&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<int> winners_;
};

/// Two-bidder matrix from nested rows: rows[i][j] is the winner at (i, j).
AllocationMatrix matrix_from_rows(const std::vector<std::vector<int>>& rows);

/// Truthful deterministic mechanism: allocation, threshold payments, objectives.
struct Mechanism {
  AllocationMatrix allocation;
  std::vector<Rational> payments;
  ObjectivePoint objectives;
};

/// Whether a winning bidder keeps winning when only their own value rises.
/// Errors: ShapeMismatch.
bool is_monotone(const AllocationMatrix& a, const Instance& inst);

/// Winner pays the lowest support value at which they still win, others fixed.
/// Errors: ShapeMismatch, NotMonotone.
std::vector<Rational> threshold_payments(const AllocationMatrix& a, const Instance& inst);

/// Expected welfare and revenue under threshold payments.
/// Errors: ShapeMismatch, NotMonotone.
ObjectivePoint evaluate(const AllocationMatrix& a, const Instance& inst);

/// Validates monotonicity and bundles payments and objectives.
Mechanism make_mechanism(AllocationMatrix a, const Instance& inst);

}  // namespace bca
