#include "bca/mechanism.hpp"

#include <string>

#include "bca/error.hpp"

namespace bca {

AllocationMatrix::AllocationMatrix(std::vector<std::size_t> shape, int fill) : shape_(std::move(shape)) {
  winners_.assign(TupleIndexer(shape_).size(), fill);
}

AllocationMatrix::AllocationMatrix(std::vector<std::size_t> shape, std::vector<int> winners)
    : shape_(std::move(shape)), winners_(std::move(winners)) {
  if (winners_.size() != TupleIndexer(shape_).size()) {
    throw Error(ErrorCode::ShapeMismatch, "winner list length does not match the shape");
  }
}

AllocationMatrix matrix_from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::ShapeMismatch, "empty matrix");
  std::vector<int> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw Error(ErrorCode::ShapeMismatch, "ragged matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return AllocationMatrix({rows.size(), rows.front().size()}, std::move(flat));
}

namespace {

void check_shape(const AllocationMatrix& a, const Instance& inst) {
  if (a.shape() != inst.shape()) throw Error(ErrorCode::ShapeMismatch, "allocation shape differs from the instance");
  const int n = static_cast<int>(inst.num_bidders());
  for (int w : a.winners()) {
    if (w < 0 || w > n) throw Error(ErrorCode::ShapeMismatch, "winner index " + std::to_string(w) + " out of range");
  }
}

bool monotone_unchecked(const AllocationMatrix& a, const TupleIndexer& idx) {
  for (std::size_t t = 0; t < a.size(); ++t) {
    const int w = a[t];
    if (w == 0) continue;
    const auto axis = static_cast<std::size_t>(w - 1);
    // Up-closure along the winner's axis reduces to the next step up.
    if (idx.coord(t, axis) + 1 < idx.shape()[axis] && a[t + idx.stride(axis)] != w) return false;
  }
  return true;
}

}  // namespace

bool is_monotone(const AllocationMatrix& a, const Instance& inst) {
  check_shape(a, inst);
  return monotone_unchecked(a, TupleIndexer(inst.shape()));
}

std::vector<Rational> threshold_payments(const AllocationMatrix& a, const Instance& inst) {
  check_shape(a, inst);
  const TupleIndexer idx(inst.shape());
  if (!monotone_unchecked(a, idx)) throw Error(ErrorCode::NotMonotone, "allocation violates monotonicity");
  std::vector<Rational> payments(a.size(), Rational(0));
  for (std::size_t t = 0; t < a.size(); ++t) {
    const int w = a[t];
    if (w == 0) continue;
    const auto axis = static_cast<std::size_t>(w - 1);
    const std::size_t own = idx.coord(t, axis);
    const std::size_t base = t - own * idx.stride(axis);
    std::size_t m = 0;
    while (a[base + m * idx.stride(axis)] != w) ++m;
    payments[t] = inst.value(axis, m);
  }
  return payments;
}

ObjectivePoint evaluate(const AllocationMatrix& a, const Instance& inst) {
  const auto payments = threshold_payments(a, inst);
  const TupleIndexer idx(inst.shape());
  ObjectivePoint p{0, 0};
  for (std::size_t t = 0; t < a.size(); ++t) {
    const int w = a[t];
    if (w == 0) continue;
    const auto axis = static_cast<std::size_t>(w - 1);
    p.welfare += inst.mass_at(t) * inst.value(axis, idx.coord(t, axis));
    p.revenue += inst.mass_at(t) * payments[t];
  }
  return p;
}

Mechanism make_mechanism(AllocationMatrix a, const Instance& inst) {
  Mechanism m;
  m.payments = threshold_payments(a, inst);
  const TupleIndexer idx(inst.shape());
  m.objectives = ObjectivePoint{0, 0};
  for (std::size_t t = 0; t < a.size(); ++t) {
    const int w = a[t];
    if (w == 0) continue;
    const auto axis = static_cast<std::size_t>(w - 1);
    m.objectives.welfare += inst.mass_at(t) * inst.value(axis, idx.coord(t, axis));
    m.objectives.revenue += inst.mass_at(t) * m.payments[t];
  }
  m.allocation = std::move(a);
  return m;
}

}  // namespace bca
