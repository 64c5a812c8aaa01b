#include "doctest.h"

#include <set>

#include "bca/exact_dp.hpp"
#include "bca/generators.hpp"
#include "bca/oracle.hpp"
#include "brute_force.hpp"
#include "random_instances.hpp"
#include "test_util.hpp"

using namespace bca;
using testing::R;

namespace {

Instance uniform_pair_13() {
  return make_independent({{{R(1), R(2)}, {R(1, 2), R(1, 2)}}, {{R(1), R(3)}, {R(1, 2), R(1, 2)}}});
}

std::vector<Rational> oracle_values(const Instance& inst, Objective objective) {
  std::set<Rational> out;
  for (const auto& p : oracle_cloud(inst)) out.insert(objective == Objective::Welfare ? p.welfare : p.revenue);
  return {out.begin(), out.end()};
}

std::vector<std::pair<Rational, Rational>> oracle_pairs(const Instance& inst) {
  std::set<std::pair<Rational, Rational>> out;
  for (const auto& p : oracle_cloud(inst)) out.insert({p.welfare, p.revenue});
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("contribution tables") {
  const auto ct = contribution_tables(uniform_pair_13());
  CHECK(ct.exact_r1(1, 0) == R(1, 2));
  CHECK(ct.exact_w1(0, 1) == R(3, 4));
  for (std::size_t j = 0; j <= 2; ++j) {
    CHECK(ct.w1(2, j) == 0);
    CHECK(ct.r1(2, j) == 0);
  }
  for (std::size_t i = 0; i <= 2; ++i) {
    CHECK(ct.w2(i, 2) == 0);
    CHECK(ct.r2(i, 2) == 0);
  }
  for (std::size_t i = 0; i <= 2; ++i) {
    for (std::size_t j = 0; j <= 2; ++j) {
      CHECK(ct.r1(i, j) <= ct.w1(i, j));
      CHECK(ct.r2(i, j) <= ct.w2(i, j));
      CHECK(ct.descale(ct.w1(i, j)) == ct.exact_w1(i, j));
      CHECK(ct.descale(ct.r2(i, j)) == ct.exact_r2(i, j));
    }
  }
  const auto single = contribution_tables(testing::point_pair(1, 2));
  CHECK(single.w1(0, 0) == single.scale);
  CHECK(single.r1(0, 0) == single.scale);
  CHECK(single.w2(0, 0) == 2 * single.scale);
  CHECK(single.r2(0, 0) == 2 * single.scale);
  const Instance three = make_independent({{{R(1)}, {R(1)}}, {{R(1)}, {R(1)}}, {{R(1)}, {R(1)}}});
  CHECK(testing::code_of([&] { contribution_tables(three); }) == ErrorCode::ArityError);
}

TEST_CASE("achievable values on the singleton pair") {
  const Instance inst = testing::point_pair(1, 2);
  CHECK(achievable_values(inst, Objective::Welfare).values() == std::vector<Rational>{R(0), R(1), R(2)});
  CHECK(achievable_values(inst, Objective::Revenue).values() == std::vector<Rational>{R(0), R(1), R(2)});
  const auto joint = achievable_values(inst, Objective::Joint).pairs();
  CHECK(joint == std::vector<std::pair<Rational, Rational>>{{R(0), R(0)}, {R(1), R(1)}, {R(2), R(2)}});
}

TEST_CASE("achievable welfare on the 2x2 example equals the oracle set") {
  const Instance inst = uniform_pair_13();
  const auto dp = achievable_values(inst, Objective::Welfare).values();
  CHECK(dp.front() == 0);
  std::set<Rational> brute;
  for (const auto& a : testing::brute_force_list(inst)) brute.insert(testing::reference_evaluate(a, inst).welfare);
  CHECK(dp == std::vector<Rational>(brute.begin(), brute.end()));
}

TEST_CASE("exact_witness examples") {
  const Instance inst = testing::point_pair(1, 2);
  const auto two = exact_witness(inst, Objective::Welfare, R(2));
  REQUIRE(two.has_value());
  CHECK(two->allocation[0] == 2);
  CHECK_FALSE(exact_witness(inst, Objective::Welfare, R(3)).has_value());
  CHECK_FALSE(exact_witness(inst, Objective::Welfare, R(1, 7)).has_value());
  CHECK(testing::code_of([&] { exact_witness(inst, Objective::Joint, R(1)); }) == ErrorCode::ArityError);

  const std::vector<Rational> b{R(2), R(1), R(1)};
  const auto gen = gen_partition_welfare(b);
  const auto m = exact_witness(gen.instance, Objective::Welfare, gen.target("welfare"));
  REQUIRE(m.has_value());
  CHECK(is_monotone(m->allocation, gen.instance));
  CHECK(evaluate(m->allocation, gen.instance).welfare == gen.target("welfare"));
}

TEST_CASE("property: DP sets equal the oracle on random small instances") {
  testing::Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::random_pair(rng, 3);
    CHECK(achievable_values(inst, Objective::Welfare).values() == oracle_values(inst, Objective::Welfare));
    CHECK(achievable_values(inst, Objective::Revenue).values() == oracle_values(inst, Objective::Revenue));
    CHECK(achievable_values(inst, Objective::Joint).pairs() == oracle_pairs(inst));
  }
}

TEST_CASE("property: every stored value reconstructs to a monotone witness on its subgrid") {
  testing::Rng rng(202);
  for (int trial = 0; trial < 15; ++trial) {
    const Instance inst = testing::random_pair(rng, 3);
    const std::size_t h1 = inst.support_size(0), h2 = inst.support_size(1);
    for (Objective obj : {Objective::Welfare, Objective::Revenue, Objective::Joint}) {
      const auto dp = achievable_values(inst, obj);
      for (std::size_t i = 0; i < h1; ++i) {
        for (std::size_t j = 0; j < h2; ++j) {
          for (const auto& key : dp.keys(i, j)) {
            const AllocationMatrix a = dp.reconstruct(key, i, j);
            REQUIRE(is_monotone(a, inst));
            for (std::size_t r = 0; r < h1; ++r) {
              for (std::size_t c = 0; c < h2; ++c) {
                if (r < i || c < j) CHECK(a.at(r, c) == 0);
              }
            }
            const ObjectivePoint p = evaluate(a, inst);
            if (obj != Objective::Revenue) CHECK(p.welfare == dp.welfare_unit() * Rational(key.welfare));
            if (obj != Objective::Welfare) CHECK(p.revenue == dp.revenue_unit() * Rational(key.revenue));
          }
        }
      }
    }
  }
}

TEST_CASE("property: floor rounding loses less than (h1 + h2) grid units") {
  testing::Rng rng(303);
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst = testing::random_pair(rng, 3);
    const Rational gamma = R(1, testing::uniform_int(rng, 2, 40));
    const Rational slack = Rational(static_cast<long>(inst.support_size(0) + inst.support_size(1))) * gamma;
    for (Objective obj : {Objective::Welfare, Objective::Revenue}) {
      const auto exact = achievable_values(inst, obj).values();
      const auto rounded = achievable_values(inst, obj, Rounding{gamma, gamma}).values();
      for (const auto& v : exact) {
        const bool near = std::any_of(rounded.begin(), rounded.end(),
                                      [&](const Rational& r) { return r <= v && v - slack < r; });
        CHECK(near);
      }
      for (const auto& r : rounded) CHECK(r >= 0);
    }
  }
}

TEST_CASE("property: find_dominating without rounding is exact") {
  testing::Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = testing::random_pair(rng, 3);
    const auto pts = oracle_cloud(inst);
    for (int q = 0; q < 6; ++q) {
      const ObjectivePoint& base = pts[static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<long>(pts.size()) - 1))];
      const ObjectivePoint bound{base.welfare + R(testing::uniform_int(rng, -1, 2), 8),
                                 base.revenue + R(testing::uniform_int(rng, -1, 2), 8)};
      const bool exists = std::any_of(pts.begin(), pts.end(), [&](const ObjectivePoint& p) { return dominates(p, bound); });
      const auto m = find_dominating(inst, bound);
      CHECK(m.has_value() == exists);
      if (m) CHECK(dominates(evaluate(m->allocation, inst), bound));
    }
  }
}
