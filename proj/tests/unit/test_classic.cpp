#include "doctest.h"

#include "bca/classic.hpp"
#include "bca/generators.hpp"
#include "bca/oracle.hpp"
#include "random_instances.hpp"
#include "test_util.hpp"

using namespace bca;
using testing::R;

TEST_CASE("vickrey examples") {
  const Mechanism tie = vickrey(testing::point_pair(1, 1));
  CHECK(tie.allocation[0] == 1);
  CHECK(tie.payments[0] == 1);
  CHECK(tie.objectives == ObjectivePoint{R(1), R(1)});
  const Instance fig = gen_nonconvex().instance;
  const Mechanism v = vickrey(fig);
  CHECK(v.allocation == AllocationMatrix(fig.shape(), 1));
  CHECK(v.objectives == ObjectivePoint{R(17), R(11)});
  CHECK(vickrey(testing::uniform_single({R(1), R(2)})).objectives == ObjectivePoint{R(3, 2), R(1)});
}

TEST_CASE("virtual_values examples") {
  for (long k = 1; k <= 6; ++k) {
    std::vector<Rational> values;
    for (long j = 1; j <= k; ++j) values.push_back(R(j));
    const auto vv = virtual_values(testing::uniform_single(values));
    CHECK(vv.regular);
    for (long j = 1; j <= k; ++j) CHECK(vv.phi[0][static_cast<std::size_t>(j - 1)] == R(2 * j - k));
  }
  CHECK(virtual_values(testing::uniform_single({R(1)})).phi[0] == std::vector<Rational>{R(1)});
  CHECK(virtual_values(testing::uniform_single({R(1), R(2)})).phi[0] == std::vector<Rational>{R(0), R(2)});
  const Instance joint = make_joint({R(1)}, {R(1)}, {{R(1)}});
  CHECK(testing::code_of([&] { virtual_values(joint); }) == ErrorCode::CorrelatedUnsupported);
}

TEST_CASE("iron examples") {
  const Instance inst = testing::uniform_single({R(1), R(2)});
  const auto vv = virtual_values(inst);
  CHECK(iron(vv, inst).values == vv.phi);
  CHECK(iron_curve({R(2), R(0)}, {R(1, 2), R(1, 2)}) == std::vector<Rational>{R(1), R(1)});
  CHECK(iron_curve({R(0), R(2)}, {R(1, 2), R(1, 2)}) == std::vector<Rational>{R(0), R(2)});
  CHECK(iron_curve({R(3), R(1), R(2)}, {R(1, 4), R(1, 4), R(1, 2)}) == std::vector<Rational>{R(2), R(2), R(2)});
}

TEST_CASE("property: ironing is non-decreasing, idempotent and mass-preserving") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = static_cast<std::size_t>(testing::uniform_int(rng, 1, 6));
    std::vector<Rational> curve;
    for (std::size_t i = 0; i < h; ++i) curve.push_back(R(testing::uniform_int(rng, -10, 10), testing::uniform_int(rng, 1, 4)));
    const auto masses = testing::random_masses(rng, h);
    const auto ironed = iron_curve(curve, masses);
    CHECK(std::is_sorted(ironed.begin(), ironed.end()));
    CHECK(iron_curve(ironed, masses) == ironed);
    Rational a = 0, b = 0;
    for (std::size_t i = 0; i < h; ++i) {
      a += masses[i] * curve[i];
      b += masses[i] * ironed[i];
    }
    CHECK(a == b);
    // Every upper tail of the ironed curve carries at least the original tail mass.
    Rational ta = 0, tb = 0;
    for (std::size_t i = h; i-- > 0;) {
      ta += masses[i] * curve[i];
      tb += masses[i] * ironed[i];
      CHECK(tb >= ta);
    }
  }
}

TEST_CASE("myerson examples") {
  const Mechanism single = myerson(testing::uniform_single({R(1), R(2)}));
  CHECK(single.allocation.winners() == std::vector<int>{1, 1});
  CHECK(single.objectives == ObjectivePoint{R(3, 2), R(1)});
  const Mechanism pair = myerson(testing::point_pair(1, 2));
  CHECK(pair.allocation[0] == 2);
  CHECK(pair.objectives.revenue == 2);
  const Instance fig = gen_nonconvex().instance;
  Rational best = 0;
  for (const auto& p : testing::cloud(fig)) best = std::max(best, p.revenue);
  CHECK(myerson(fig).objectives.revenue == best);
}

TEST_CASE("lambda_optimal examples") {
  testing::Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = testing::random_independent(rng, {2, 3});
    CHECK(lambda_optimal(inst, R(0)).allocation == myerson(inst).allocation);
  }
  for (const Rational& lambda : {R(0), R(1, 3), R(1), R(7)}) {
    CHECK(lambda_optimal(testing::point_pair(1, 2), lambda).allocation[0] == 2);
  }
  const Instance fig = gen_nonconvex().instance;
  const auto p = lambda_optimal(fig, R(1)).objectives;
  CHECK(p.revenue + p.welfare == testing::max_combined(fig, R(1)));
  CHECK(testing::code_of([&] { lambda_optimal(fig, R(-1)); }) == ErrorCode::NegativeLambda);
}

TEST_CASE("property: classic mechanisms are optimal against the oracle") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const bool regular = trial % 2 == 0;
    const std::vector<std::size_t> shape{static_cast<std::size_t>(testing::uniform_int(rng, 1, 3)),
                                         static_cast<std::size_t>(testing::uniform_int(rng, 1, 3))};
    const Instance inst = regular ? testing::random_regular(rng, shape) : testing::random_independent(rng, shape);
    const auto pts = testing::cloud(inst);
    Rational best_w = 0, best_r = 0;
    for (const auto& p : pts) {
      best_w = std::max(best_w, p.welfare);
      best_r = std::max(best_r, p.revenue);
    }
    CHECK(vickrey(inst).objectives.welfare == best_w);
    CHECK(myerson(inst).objectives.revenue == best_r);
    Rational previous = -1;
    for (const Rational& lambda : {R(0), R(1, 4), R(1, 2), R(1), R(3), R(10)}) {
      const auto p = lambda_optimal(inst, lambda).objectives;
      const Rational value = p.revenue + lambda * p.welfare;
      CHECK(value == testing::max_combined(inst, lambda));
      CHECK(value >= previous);
      previous = value;
    }
  }
}

TEST_CASE("property: the lambda sweep value is convex in lambda") {
  testing::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = testing::random_independent(rng, {3, 2});
    auto value = [&](const Rational& l) -> Rational {
      const auto p = lambda_optimal(inst, l).objectives;
      return p.revenue + l * p.welfare;
    };
    for (long a = 0; a < 8; ++a) {
      const Rational x = R(a, 2), y = R(a + 2, 2), mid = R(a + 1, 2);
      CHECK(2 * value(mid) <= value(x) + value(y));
    }
  }
}

TEST_CASE("randomized_tradeoff endpoints and midpoint") {
  const Instance fig = gen_nonconvex().instance;
  const Mechanism v = vickrey(fig);
  const Mechanism m = myerson(fig);
  const auto top = randomized_tradeoff(fig, v.objectives.welfare);
  REQUIRE(top.components.size() == 1);
  CHECK(top.components[0].second == 1);
  CHECK(top.expected().welfare == v.objectives.welfare);
  const auto hull = tradeoff_hull(fig);
  CHECK(top.expected() == hull.back().objectives);

  const auto bottom = randomized_tradeoff(fig, m.objectives.welfare);
  REQUIRE(bottom.components.size() == 1);
  CHECK(bottom.components[0].first.objectives == m.objectives);

  const Rational mid = (v.objectives.welfare + m.objectives.welfare) / 2;
  const auto mix = randomized_tradeoff(fig, mid);
  CHECK(mix.components.size() == 2);
  CHECK(mix.expected().welfare == mid);
  CHECK(testing::on_upper_envelope(mix.expected(), testing::cloud(fig)));

  CHECK(testing::code_of([&] { randomized_tradeoff(fig, v.objectives.welfare + 1); }) == ErrorCode::TargetOutOfRange);
  CHECK(testing::code_of([&] { randomized_tradeoff(fig, m.objectives.welfare - 1); }) == ErrorCode::TargetOutOfRange);
}

TEST_CASE("property: randomized trade-off points lie on the upper envelope") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst = testing::random_independent(rng, {3, 3});
    const auto pts = testing::cloud(inst);
    const Rational lo = myerson(inst).objectives.welfare;
    const Rational hi = vickrey(inst).objectives.welfare;
    for (long s = 0; s <= 4; ++s) {
      const Rational target = lo + (hi - lo) * R(s, 4);
      const auto mix = randomized_tradeoff(inst, target);
      CHECK(mix.components.size() <= 2);
      Rational total = 0;
      for (const auto& [mech, w] : mix.components) {
        CHECK(w > 0);
        total += w;
      }
      CHECK(total == 1);
      CHECK(mix.expected().welfare == target);
      CHECK(testing::on_upper_envelope(mix.expected(), pts));
    }
  }
}
