#include "bca/oracle.hpp"

#include <algorithm>
#include <climits>
#include <optional>

#include "bca/error.hpp"

namespace bca {

bool ThresholdPair::compatible() const {
  for (std::size_t i = 0; i < t2.size(); ++i) {
    for (std::size_t j = 0; j < t1.size(); ++j) {
      if (i >= t1[j] && j >= t2[i]) return false;
    }
  }
  return true;
}

AllocationMatrix ThresholdPair::to_matrix() const {
  const std::size_t h1 = t2.size();
  const std::size_t h2 = t1.size();
  AllocationMatrix a({h1, h2});
  for (std::size_t i = 0; i < h1; ++i) {
    for (std::size_t j = 0; j < h2; ++j) {
      if (i >= t1[j]) {
        a.at(i, j) = 1;
      } else if (j >= t2[i]) {
        a.at(i, j) = 2;
      }
    }
  }
  return a;
}

namespace {

void check_pair_limits(const Instance& inst, const EnumerationLimits& limits) {
  if (inst.support_size(0) > limits.pair_max_support || inst.support_size(1) > limits.pair_max_support) {
    throw Error(ErrorCode::LimitExceeded, "support sizes exceed the two-bidder enumeration limit " +
                                              std::to_string(limits.pair_max_support));
  }
}

// Cell-by-cell objective kernel for two bidders, scaled to integers.
// welfare1(i, j) = f(i, j) v1[i]; revenue1(i, j, t) = f(i, j) v1[t]; same for bidder 2.
template <typename Int>
struct PairKernel {
  std::size_t h1 = 0, h2 = 0;
  std::vector<Int> welfare1, welfare2;
  std::vector<Int> revenue1, revenue2;  // indexed [(i * h2 + j) * h + t]
  Rational unit;

  Int w1(std::size_t i, std::size_t j) const { return welfare1[i * h2 + j]; }
  Int w2(std::size_t i, std::size_t j) const { return welfare2[i * h2 + j]; }
  Int r1(std::size_t i, std::size_t j, std::size_t t) const { return revenue1[(i * h2 + j) * h1 + t]; }
  Int r2(std::size_t i, std::size_t j, std::size_t t) const { return revenue2[(i * h2 + j) * h2 + t]; }

  std::pair<Int, Int> evaluate(const ThresholdPair& tp) const {
    Int w = 0;
    Int r = 0;
    for (std::size_t i = 0; i < h1; ++i) {
      for (std::size_t j = 0; j < h2; ++j) {
        if (i >= tp.t1[j]) {
          w += w1(i, j);
          r += r1(i, j, tp.t1[j]);
        } else if (j >= tp.t2[i]) {
          w += w2(i, j);
          r += r2(i, j, tp.t2[i]);
        }
      }
    }
    return {w, r};
  }
};

struct ScaledCells {
  BigInt scale = 1;
  std::vector<Rational> welfare1, welfare2, revenue1, revenue2;
};

ScaledCells scaled_cells(const Instance& inst) {
  const std::size_t h1 = inst.support_size(0);
  const std::size_t h2 = inst.support_size(1);
  ScaledCells c;
  c.welfare1.resize(h1 * h2);
  c.welfare2.resize(h1 * h2);
  c.revenue1.assign(h1 * h2 * h1, Rational(0));
  c.revenue2.assign(h1 * h2 * h2, Rational(0));
  for (std::size_t i = 0; i < h1; ++i) {
    for (std::size_t j = 0; j < h2; ++j) {
      const Rational& f = inst.mass2(i, j);
      const std::size_t cell = i * h2 + j;
      c.welfare1[cell] = f * inst.value(0, i);
      c.welfare2[cell] = f * inst.value(1, j);
      for (std::size_t t = 0; t <= i; ++t) c.revenue1[cell * h1 + t] = f * inst.value(0, t);
      for (std::size_t t = 0; t <= j; ++t) c.revenue2[cell * h2 + t] = f * inst.value(1, t);
    }
  }
  for (const auto* v : {&c.welfare1, &c.welfare2, &c.revenue1, &c.revenue2}) {
    for (const auto& q : *v) c.scale = lcm(c.scale, q.get_den());
  }
  return c;
}

template <typename Int>
Int to_int(const Rational& scaled);

template <>
long to_int<long>(const Rational& scaled) {
  return scaled.get_num().get_si();
}

template <>
BigInt to_int<BigInt>(const Rational& scaled) {
  return scaled.get_num();
}

template <typename Int>
PairKernel<Int> make_kernel(const Instance& inst, const ScaledCells& c) {
  PairKernel<Int> k;
  k.h1 = inst.support_size(0);
  k.h2 = inst.support_size(1);
  k.unit = Rational(1) / Rational(c.scale);
  const Rational s(c.scale);
  auto convert = [&](const std::vector<Rational>& in, std::vector<Int>& out) {
    out.reserve(in.size());
    for (const auto& q : in) out.push_back(to_int<Int>(q * s));
  };
  convert(c.welfare1, k.welfare1);
  convert(c.welfare2, k.welfare2);
  convert(c.revenue1, k.revenue1);
  convert(c.revenue2, k.revenue2);
  return k;
}

// Whether every scaled sum fits comfortably in 64 bits.
bool fits_int64(const Instance& inst, const ScaledCells& c) {
  const Rational bound = inst.max_value() * Rational(c.scale) * 2;
  return bound < Rational(BigInt(1) << 60);
}

template <typename Int, typename Payload>
class StreamingFront {
 public:
  void add(Int w, Int r, std::size_t handle, const std::function<Payload()>& payload) {
    buffer_.push_back({std::move(w), std::move(r), handle, payload()});
    if (buffer_.size() >= kFlushSize) flush();
  }

  struct Item {
    Int w;
    Int r;
    std::size_t handle;
    Payload payload;
  };

  std::vector<Item> finish() {
    flush();
    std::reverse(buffer_.begin(), buffer_.end());
    return std::move(buffer_);
  }

 private:
  static constexpr std::size_t kFlushSize = 1 << 15;

  // Leaves buffer_ as the current front, welfare descending.
  void flush() {
    std::sort(buffer_.begin(), buffer_.end(), [](const Item& a, const Item& b) {
      if (a.w != b.w) return a.w > b.w;
      if (a.r != b.r) return a.r > b.r;
      return a.handle < b.handle;
    });
    std::vector<Item> kept;
    for (auto& item : buffer_) {
      if (!kept.empty() && item.r <= kept.back().r) continue;
      kept.push_back(std::move(item));
    }
    buffer_ = std::move(kept);
  }

  std::vector<Item> buffer_;
};

template <typename Int>
OraclePareto pair_pareto(const Instance& inst, const ScaledCells& cells, const EnumerationLimits& limits) {
  const auto kernel = make_kernel<Int>(inst, cells);
  StreamingFront<Int, ThresholdPair> front;
  std::size_t handle = 0;
  enumerate_threshold_pairs(
      inst,
      [&](const ThresholdPair& tp) {
        auto [w, r] = kernel.evaluate(tp);
        front.add(std::move(w), std::move(r), handle++, [&] { return tp; });
      },
      limits);
  OraclePareto out;
  for (auto& item : front.finish()) {
    out.front.points.push_back(
        {ObjectivePoint{Rational(BigInt(item.w)) * kernel.unit, Rational(BigInt(item.r)) * kernel.unit},
         out.matrices.size()});
    out.matrices.push_back(item.payload.to_matrix());
  }
  return out;
}

template <typename Int>
std::vector<ObjectivePoint> pair_cloud(const Instance& inst, const ScaledCells& cells,
                                       const EnumerationLimits& limits) {
  const auto kernel = make_kernel<Int>(inst, cells);
  std::vector<ObjectivePoint> out;
  enumerate_threshold_pairs(
      inst,
      [&](const ThresholdPair& tp) {
        auto [w, r] = kernel.evaluate(tp);
        out.push_back({Rational(BigInt(w)) * kernel.unit, Rational(BigInt(r)) * kernel.unit});
      },
      limits);
  return out;
}

}  // namespace

void enumerate_threshold_pairs(const Instance& inst, const std::function<void(const ThresholdPair&)>& visit,
                               const EnumerationLimits& limits) {
  if (inst.num_bidders() != 2) throw Error(ErrorCode::ArityError, "threshold pairs need 2 bidders");
  check_pair_limits(inst, limits);
  const std::size_t h1 = inst.support_size(0);
  const std::size_t h2 = inst.support_size(1);
  ThresholdPair tp;
  tp.t1.assign(h2, h1);
  tp.t2.assign(h1, h2);
  // Given t1, row i admits t2[i] > every column j with t1[j] <= i.
  std::vector<std::size_t> min_t2(h1);
  std::function<void(std::size_t)> rows = [&](std::size_t i) {
    if (i == h1) {
      visit(tp);
      return;
    }
    for (std::size_t t = min_t2[i]; t <= h2; ++t) {
      tp.t2[i] = t;
      rows(i + 1);
    }
  };
  std::function<void(std::size_t)> columns = [&](std::size_t j) {
    if (j == h2) {
      for (std::size_t i = 0; i < h1; ++i) {
        min_t2[i] = 0;
        for (std::size_t c = 0; c < h2; ++c) {
          if (tp.t1[c] <= i) min_t2[i] = c + 1;
        }
      }
      rows(0);
      return;
    }
    for (std::size_t t = 0; t <= h1; ++t) {
      tp.t1[j] = t;
      columns(j + 1);
    }
  };
  columns(0);
}

void enumerate_generic(const Instance& inst, const MatrixVisitor& visit, const EnumerationLimits& limits) {
  if (inst.num_tuples() > limits.generic_max_tuples) {
    throw Error(ErrorCode::LimitExceeded, std::to_string(inst.num_tuples()) + " tuples exceed the generic limit " +
                                              std::to_string(limits.generic_max_tuples));
  }
  const TupleIndexer idx(inst.shape());
  const int n = static_cast<int>(inst.num_bidders());
  AllocationMatrix a(inst.shape());
  std::function<void(std::size_t)> assign = [&](std::size_t t) {
    if (t == idx.size()) {
      visit(a);
      return;
    }
    int forced = 0;
    for (std::size_t b = 0; b < idx.rank(); ++b) {
      if (idx.coord(t, b) == 0) continue;
      if (a[t - idx.stride(b)] == static_cast<int>(b) + 1) {
        if (forced != 0) return;  // two bidders claim the tuple
        forced = static_cast<int>(b) + 1;
      }
    }
    if (forced != 0) {
      a[t] = forced;
      assign(t + 1);
    } else {
      for (int w = 0; w <= n; ++w) {
        a[t] = w;
        assign(t + 1);
      }
    }
    a[t] = 0;
  };
  assign(0);
}

void enumerate_feasible(const Instance& inst, const MatrixVisitor& visit, const EnumerationLimits& limits) {
  if (inst.num_bidders() == 2) {
    enumerate_threshold_pairs(inst, [&](const ThresholdPair& tp) { visit(tp.to_matrix()); }, limits);
  } else {
    enumerate_generic(inst, visit, limits);
  }
}

std::size_t count_feasible(const Instance& inst, const EnumerationLimits& limits) {
  std::size_t count = 0;
  if (inst.num_bidders() == 2) {
    enumerate_threshold_pairs(inst, [&](const ThresholdPair&) { ++count; }, limits);
  } else {
    enumerate_generic(inst, [&](const AllocationMatrix&) { ++count; }, limits);
  }
  return count;
}

std::vector<ObjectivePoint> oracle_cloud(const Instance& inst, const EnumerationLimits& limits) {
  if (inst.num_bidders() == 2) {
    check_pair_limits(inst, limits);
    const ScaledCells cells = scaled_cells(inst);
    if (fits_int64(inst, cells)) return pair_cloud<long>(inst, cells, limits);
    return pair_cloud<BigInt>(inst, cells, limits);
  }
  std::vector<ObjectivePoint> out;
  enumerate_generic(inst, [&](const AllocationMatrix& a) { out.push_back(evaluate(a, inst)); }, limits);
  return out;
}

OraclePareto oracle_pareto(const Instance& inst, const EnumerationLimits& limits) {
  if (inst.num_bidders() == 2) {
    check_pair_limits(inst, limits);
    const ScaledCells cells = scaled_cells(inst);
    if (fits_int64(inst, cells)) return pair_pareto<long>(inst, cells, limits);
    return pair_pareto<BigInt>(inst, cells, limits);
  }
  StreamingFront<Rational, AllocationMatrix> front;
  std::size_t handle = 0;
  enumerate_generic(
      inst,
      [&](const AllocationMatrix& a) {
        ObjectivePoint p = evaluate(a, inst);
        front.add(std::move(p.welfare), std::move(p.revenue), handle++, [&] { return a; });
      },
      limits);
  OraclePareto out;
  for (auto& item : front.finish()) {
    out.front.points.push_back({ObjectivePoint{item.w, item.r}, out.matrices.size()});
    out.matrices.push_back(std::move(item.payload));
  }
  return out;
}

SingleBidderCurve single_bidder_curve(const Instance& inst) {
  if (inst.num_bidders() != 1) {
    throw Error(ErrorCode::ArityError, "single_bidder_curve needs 1 bidder, got " + std::to_string(inst.num_bidders()));
  }
  const std::size_t h = inst.support_size(0);
  SingleBidderCurve curve;
  std::vector<ParetoEntry> entries;
  for (std::size_t price = 0; price <= h; ++price) {
    AllocationMatrix a({h});
    for (std::size_t k = price; k < h; ++k) a[k] = 1;
    curve.points.push_back({price, evaluate(a, inst)});
    entries.push_back({curve.points.back().point, price});
  }
  curve.pareto_convex = is_convex_front(pareto_filter(entries));
  return curve;
}

bool is_convex_front(const ParetoSet& front) {
  const auto& pts = front.points;
  for (std::size_t q = 0; q < pts.size(); ++q) {
    for (std::size_t p = 0; p < q; ++p) {
      for (std::size_t r = q + 1; r < pts.size(); ++r) {
        const auto& P = pts[p].point;
        const auto& Q = pts[q].point;
        const auto& R = pts[r].point;
        // Chord revenue at Q's welfare, compared without division.
        const Rational span = R.welfare - P.welfare;
        const Rational chord_times_span = P.revenue * (R.welfare - Q.welfare) + R.revenue * (Q.welfare - P.welfare);
        if (chord_times_span > Q.revenue * span) return false;
      }
    }
  }
  return true;
}

}  // namespace bca
