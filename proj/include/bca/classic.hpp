#pragma once

#include <utility>
#include <vector>

#include "bca/instance.hpp"
#include "bca/mechanism.hpp"
#include "bca/rational.hpp"

namespace bca {

/// Discrete virtual valuations per bidder, phi[i][j] aligned with the support.
struct VirtualValueTable {
  std::vector<std::vector<Rational>> phi;
  bool regular = true;
};

/// Non-decreasing surrogate per bidder (weighted isotonic fit of the input curve).
struct IronedCurve {
  std::vector<std::vector<Rational>> values;
};

/// Convex combination of deterministic mechanisms; weights positive and summing to 1.
struct RandomizedMechanism {
  std::vector<std::pair<Mechanism, Rational>> components;

  ObjectivePoint expected() const;
};

/// Second-price auction: highest value wins, ties to the lowest bidder index.
Mechanism vickrey(const Instance& inst);

/// phi^j = v^j - (v^{j+1} - v^j) * (f^{j+1} + ... + f^h) / f^j, with phi^h = v^h.
/// Errors: CorrelatedUnsupported.
VirtualValueTable virtual_values(const Instance& inst);

/// Irons each bidder's curve against its marginal masses. Identity on regular tables.
IronedCurve iron(const VirtualValueTable& vv, const Instance& inst);

/// Pool-adjacent-violators fit: slopes of the greatest convex minorant of the
/// mass-weighted cumulative curve, listed per support point.
std::vector<Rational> iron_curve(const std::vector<Rational>& curve, const std::vector<Rational>& masses);

/// Revenue-optimal auction for independent bidders.
/// Errors: CorrelatedUnsupported.
Mechanism myerson(const Instance& inst);

/// Maximizes revenue + lambda * welfare over all (also randomized) mechanisms.
/// Errors: CorrelatedUnsupported, NegativeLambda.
Mechanism lambda_optimal(const Instance& inst, const Rational& lambda);

/// Slope large enough that lambda_optimal is welfare-maximal with the best
/// revenue among welfare-maximal mechanisms.
Rational welfare_saturation_lambda(const Instance& inst);

/// Vertices of the upper concave envelope of the (welfare, revenue) cloud
/// between the revenue-optimal and the welfare-optimal ends, welfare ascending.
/// Errors: CorrelatedUnsupported.
std::vector<Mechanism> tradeoff_hull(const Instance& inst);

/// Mixture of at most two hull vertices with expected welfare exactly `target_welfare`
/// and maximal expected revenue among randomized mechanisms at that welfare.
/// Errors: TargetOutOfRange, CorrelatedUnsupported.
RandomizedMechanism randomized_tradeoff(const Instance& inst, const Rational& target_welfare);

}  // namespace bca
