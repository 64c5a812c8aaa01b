#include "bca/instance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bca/error.hpp"

namespace bca {

namespace {

void check_support(const MarginalDistribution& m, std::size_t bidder) {
  const std::string who = "bidder " + std::to_string(bidder + 1);
  if (m.values.empty()) throw Error(ErrorCode::ShapeMismatch, who + " has an empty support");
  for (std::size_t k = 0; k < m.values.size(); ++k) {
    if (m.values[k] < 0) throw Error(ErrorCode::NegativeValue, who + " value " + format_rational(m.values[k]));
    if (k > 0 && !(m.values[k - 1] < m.values[k])) {
      throw Error(ErrorCode::NonIncreasingSupport, who + " values must be strictly increasing");
    }
  }
}

void check_masses(const std::vector<Rational>& masses, std::size_t bidder) {
  const std::string who = "bidder " + std::to_string(bidder + 1);
  Rational total = 0;
  for (const auto& f : masses) {
    if (f <= 0) throw Error(ErrorCode::NonPositiveMass, who + " mass " + format_rational(f));
    total += f;
  }
  if (total != 1) throw Error(ErrorCode::MassNotOne, who + " masses sum to " + format_rational(total));
}

}  // namespace

TupleIndexer::TupleIndexer(std::vector<std::size_t> shape) : shape_(std::move(shape)), strides_(shape_.size()) {
  for (std::size_t axis = shape_.size(); axis-- > 0;) {
    strides_[axis] = size_;
    size_ *= shape_[axis];
  }
}

std::size_t TupleIndexer::flat(std::span<const std::size_t> coords) const {
  std::size_t f = 0;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) f += coords[axis] * strides_[axis];
  return f;
}

void TupleIndexer::decode(std::size_t flat, std::span<std::size_t> coords) const {
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) coords[axis] = (flat / strides_[axis]) % shape_[axis];
}

Rational Instance::mass(std::span<const std::size_t> coords) const {
  return tuple_mass_[TupleIndexer(shape_).flat(coords)];
}

Rational Instance::max_value() const {
  Rational best = 0;
  for (const auto& m : marginals_) best = std::max(best, m.values.back());
  return best;
}

Rational Instance::objective_upper_bound() const {
  const TupleIndexer idx(shape_);
  std::vector<std::size_t> coords(shape_.size());
  Rational total = 0;
  for (std::size_t t = 0; t < num_tuples_; ++t) {
    idx.decode(t, coords);
    Rational best = 0;
    for (std::size_t b = 0; b < coords.size(); ++b) best = std::max(best, marginals_[b].values[coords[b]]);
    total += tuple_mass_[t] * best;
  }
  return total;
}

Instance validate_instance(const RawInstance& raw) {
  if (raw.bidders.empty()) throw Error(ErrorCode::ShapeMismatch, "instance has no bidders");
  Instance inst;
  inst.marginals_ = raw.bidders;
  for (std::size_t b = 0; b < raw.bidders.size(); ++b) check_support(raw.bidders[b], b);

  if (raw.joint) {
    if (raw.bidders.size() != 2) {
      throw Error(ErrorCode::JointArityError, "joint table needs exactly 2 bidders, got " +
                                                  std::to_string(raw.bidders.size()));
    }
    const std::size_t h1 = raw.bidders[0].size();
    const std::size_t h2 = raw.bidders[1].size();
    const auto& rows = *raw.joint;
    if (rows.size() != h1) throw Error(ErrorCode::ShapeMismatch, "joint table must have h1 rows");
    std::vector<Rational> flat;
    flat.reserve(h1 * h2);
    Rational total = 0;
    std::vector<Rational> row_sum(h1, Rational(0));
    std::vector<Rational> col_sum(h2, Rational(0));
    for (std::size_t i = 0; i < h1; ++i) {
      if (rows[i].size() != h2) throw Error(ErrorCode::ShapeMismatch, "joint table must have h2 columns");
      for (std::size_t j = 0; j < h2; ++j) {
        const Rational& f = rows[i][j];
        if (f < 0) throw Error(ErrorCode::NonPositiveMass, "negative joint mass " + format_rational(f));
        flat.push_back(f);
        total += f;
        row_sum[i] += f;
        col_sum[j] += f;
      }
    }
    if (total != 1) throw Error(ErrorCode::MassNotOne, "joint masses sum to " + format_rational(total));
    const std::vector<Rational>* derived[2] = {&row_sum, &col_sum};
    for (std::size_t b = 0; b < 2; ++b) {
      for (const auto& f : *derived[b]) {
        if (f <= 0) {
          throw Error(ErrorCode::NonPositiveMass,
                      "bidder " + std::to_string(b + 1) + " has a support point with zero marginal mass");
        }
      }
      const auto& given = raw.bidders[b].masses;
      if (!given.empty() && given != *derived[b]) {
        throw Error(ErrorCode::JointMarginalMismatch,
                    "bidder " + std::to_string(b + 1) + " masses disagree with the joint table");
      }
      inst.marginals_[b].masses = *derived[b];
    }
    inst.joint_ = std::move(flat);
  } else {
    for (std::size_t b = 0; b < raw.bidders.size(); ++b) {
      if (raw.bidders[b].masses.size() != raw.bidders[b].values.size()) {
        throw Error(ErrorCode::ShapeMismatch,
                    "bidder " + std::to_string(b + 1) + " has " + std::to_string(raw.bidders[b].values.size()) +
                        " values but " + std::to_string(raw.bidders[b].masses.size()) + " masses");
      }
      check_masses(raw.bidders[b].masses, b);
    }
  }

  for (const auto& m : inst.marginals_) inst.shape_.push_back(m.size());
  const TupleIndexer idx(inst.shape_);
  inst.num_tuples_ = idx.size();
  inst.tuple_mass_.resize(inst.num_tuples_);
  if (inst.joint_) {
    inst.tuple_mass_ = *inst.joint_;
  } else {
    std::vector<std::size_t> coords(inst.shape_.size());
    for (std::size_t t = 0; t < inst.num_tuples_; ++t) {
      idx.decode(t, coords);
      Rational f = 1;
      for (std::size_t b = 0; b < coords.size(); ++b) f *= inst.marginals_[b].masses[coords[b]];
      inst.tuple_mass_[t] = f;
    }
  }
  return inst;
}

Instance make_independent(std::vector<MarginalDistribution> bidders) {
  RawInstance raw;
  raw.bidders = std::move(bidders);
  return validate_instance(raw);
}

Instance make_joint(std::vector<Rational> values1, std::vector<Rational> values2,
                    std::vector<std::vector<Rational>> joint) {
  RawInstance raw;
  raw.bidders.push_back({std::move(values1), {}});
  raw.bidders.push_back({std::move(values2), {}});
  raw.joint = std::move(joint);
  return validate_instance(raw);
}

Instance scale_values(const Instance& inst, const Rational& factor) {
  RawInstance raw;
  for (std::size_t b = 0; b < inst.num_bidders(); ++b) {
    MarginalDistribution m = inst.marginal(b);
    for (auto& v : m.values) v *= factor;
    if (inst.is_correlated()) m.masses.clear();
    raw.bidders.push_back(std::move(m));
  }
  if (inst.is_correlated()) {
    const std::size_t h1 = inst.support_size(0);
    const std::size_t h2 = inst.support_size(1);
    std::vector<std::vector<Rational>> rows(h1, std::vector<Rational>(h2));
    for (std::size_t i = 0; i < h1; ++i)
      for (std::size_t j = 0; j < h2; ++j) rows[i][j] = inst.mass2(i, j);
    raw.joint = std::move(rows);
  }
  return validate_instance(raw);
}

}  // namespace bca
