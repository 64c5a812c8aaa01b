#include "doctest.h"

#include "bca/classic.hpp"
#include "bca/exact_dp.hpp"
#include "bca/generators.hpp"
#include "bca/oracle.hpp"
#include "random_instances.hpp"
#include "test_util.hpp"

using namespace bca;
using testing::R;

namespace {

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.push_back(R(x));
  return out;
}

bool partitionable(const std::vector<Rational>& b) {
  Rational total = 0;
  for (const auto& x : b) total += x;
  const std::size_t n = b.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s += b[i];
    }
    if (2 * s == total) return true;
  }
  return false;
}

std::vector<int> diagonal_of(int mask, std::size_t k) {
  std::vector<int> d;
  for (std::size_t i = 0; i < k; ++i) d.push_back((mask >> i) & 1 ? 2 : 1);
  return d;
}

}  // namespace

TEST_CASE("gen_nonconvex") {
  const auto g = gen_nonconvex();
  CHECK(g.instance.shape() == std::vector<std::size_t>{2, 2});
  CHECK(g.instance.marginal(0).values == rationals({11, 20}));
  CHECK(g.instance.marginal(1).values == rationals({2, 5}));
  for (std::size_t b = 0; b < 2; ++b) CHECK(g.instance.marginal(b).masses == std::vector<Rational>{R(1, 3), R(2, 3)});
  CHECK_FALSE(g.instance.is_correlated());
  CHECK(g.targets.empty());
}

TEST_CASE("partition-welfare construction") {
  const auto g = gen_partition_welfare(rationals({2, 1, 1}));
  CHECK(g.instance.shape() == std::vector<std::size_t>{3, 3});
  CHECK(g.instance.marginal(0).values == rationals({1, 2, 3}));
  CHECK(g.instance.marginal(1).values == std::vector<Rational>{R(1) + R(1, 60), R(2) + R(1, 120), R(3) + R(1, 120)});
  CHECK(parse_rational(g.meta("unit_mass_target")) == R(16) + R(6) + R(1, 40) + R(1, 60));
  CHECK(g.target("welfare") == (R(22) + R(1, 40) + R(1, 60)) / 9);
  CHECK(g.meta("rescaled") == "true");
  CHECK(virtual_values(g.instance).regular);
  CHECK(testing::code_of([] { gen_partition_welfare(rationals({1, 2})); }) == ErrorCode::NotDescending);
  CHECK(testing::code_of([] { gen_partition_welfare(rationals({1})); }) == ErrorCode::TooSmall);
}

TEST_CASE("partition-welfare target is reachable iff the set splits evenly") {
  const std::vector<std::vector<Rational>> sets{
      rationals({2, 1, 1}),          rationals({3, 1, 1}),       rationals({3, 3}),          rationals({2, 1}),
      rationals({3, 2, 1}),          rationals({4, 1, 1}),       rationals({2, 2, 1, 1}),    rationals({5, 2, 1, 1}),
      rationals({5, 1, 1, 1}),       rationals({6, 2, 1, 1}),    rationals({5, 2, 1, 1, 1}), rationals({7, 3, 2, 1, 1}),
      rationals({4, 3, 3, 2, 1, 1}), rationals({9, 3, 1, 1, 1, 1})};
  for (const auto& b : sets) {
    const auto g = gen_partition_welfare(b);
    const auto m = exact_witness(g.instance, Objective::Welfare, g.target("welfare"));
    CAPTURE(g.meta("B"));
    CHECK(m.has_value() == partitionable(b));
    if (m) CHECK(evaluate(m->allocation, g.instance).welfare == g.target("welfare"));
  }
}

TEST_CASE("property: partition-welfare column distributions are regular") {
  testing::Rng rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = static_cast<std::size_t>(testing::uniform_int(rng, 2, 8));
    std::vector<long> raw;
    for (std::size_t i = 0; i < k; ++i) raw.push_back(testing::uniform_int(rng, 1, 50));
    std::sort(raw.rbegin(), raw.rend());
    std::vector<Rational> b;
    for (long x : raw) b.push_back(R(x));
    CHECK(virtual_values(gen_partition_welfare(b).instance).regular);
  }
}

TEST_CASE("partition-bicriterion value ordering") {
  for (std::size_t k = 2; k <= 5; ++k) {
    std::vector<Rational> a;
    for (std::size_t i = 0; i < k; ++i) a.push_back(R(static_cast<long>(i % 3 + 1)));
    const auto g = gen_partition_bicriterion(a);
    const auto& v1 = g.instance.marginal(0).values;
    const auto& v2 = g.instance.marginal(1).values;
    REQUIRE(v1.size() == 2 * k + 1);
    for (std::size_t i = 0; i + 1 < v1.size(); ++i) {
      // The construction's tables put bidder 1 just above bidder 2 at each index.
      CHECK(v2[i] < v1[i]);
      CHECK(v1[i] < v2[i + 1]);
    }
    CHECK(v1.back() == v2.back());
    CHECK(parse_rational(g.meta("eps")) > 0);
  }
}

TEST_CASE("partition-bicriterion: flipping an odd diagonal entry keeps welfare plus revenue") {
  for (const auto& a : {rationals({1, 1}), rationals({1, 2, 3})}) {
    const auto g = gen_partition_bicriterion(a);
    const std::size_t n = g.instance.support_size(0);
    for (int mask = 0; mask < (1 << n); ++mask) {
      const auto diag = diagonal_of(mask, n);
      const ObjectivePoint p = evaluate(diagonal_mechanism(diag), g.instance);
      for (std::size_t i = 0; i + 1 < n; i += 2) {
        auto flipped = diag;
        flipped[i] = 3 - flipped[i];
        const ObjectivePoint q = evaluate(diagonal_mechanism(flipped), g.instance);
        CHECK(p.welfare + p.revenue == q.welfare + q.revenue);
      }
    }
  }
}

TEST_CASE("partition-bicriterion: an even split gives a mechanism dominating the targets") {
  for (const auto& a : {rationals({1, 1}), rationals({2, 1, 1})}) {
    const auto g = gen_partition_bicriterion(a);
    const ObjectivePoint target{g.target("welfare"), g.target("revenue")};
    const auto m = find_dominating(g.instance, target);
    CAPTURE(g.meta("A"));
    REQUIRE(m.has_value());
    CHECK(dominates(evaluate(m->allocation, g.instance), target));
  }
}

TEST_CASE("partition-bicriterion: among diagonal mechanisms the targets are met iff the set splits evenly") {
  for (const auto& a : {rationals({1, 1}), rationals({1, 2}), rationals({2, 1, 1}), rationals({3, 1, 1})}) {
    const auto g = gen_partition_bicriterion(a);
    const ObjectivePoint target{g.target("welfare"), g.target("revenue")};
    const std::size_t n = g.instance.support_size(0);
    bool any = false;
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (dominates(evaluate(diagonal_mechanism(diagonal_of(mask, n)), g.instance), target)) any = true;
    }
    CAPTURE(g.meta("A"));
    CHECK(any == partitionable(a));
  }
}

TEST_CASE("partition-bicriterion: a non-diagonal mechanism beats the targets without a split") {
  // Giving up light-mass cells can raise prices on heavy rows at almost no
  // welfare cost, so the welfare target does not force the diagonal format.
  for (const auto& a : {rationals({1, 2}), rationals({3, 1, 1})}) {
    const auto g = gen_partition_bicriterion(a);
    REQUIRE_FALSE(partitionable(a));
    const ObjectivePoint target{g.target("welfare"), g.target("revenue")};
    const auto m = find_dominating(g.instance, target);
    CAPTURE(g.meta("A"));
    REQUIRE(m.has_value());
    CHECK(dominates(evaluate(m->allocation, g.instance), target));
    const std::size_t n = g.instance.support_size(0);
    for (int mask = 0; mask < (1 << n); ++mask) CHECK_FALSE(m->allocation == diagonal_mechanism(diagonal_of(mask, n)));
  }
}

TEST_CASE("exponential family construction") {
  const auto g = gen_exponential_pareto(3);
  const auto& v1 = g.instance.marginal(0).values;
  const auto& v2 = g.instance.marginal(1).values;
  const Rational n = R(1000 * 13 + 1);
  CHECK(v1 == std::vector<Rational>{R(1) + 1 / n, R(2) + 3 / n, R(3) + 9 / n});
  CHECK(v2 == rationals({1, 2, 3}));
  CHECK(g.meta("prefix_ratio_condition") == "false");
  CHECK(gen_exponential_pareto(3, 5).meta("prefix_ratio_condition") == "true");
  CHECK(testing::code_of([] { gen_exponential_pareto(1); }) == ErrorCode::TooSmall);
  CHECK(testing::code_of([] { gen_exponential_pareto(13); }) == ErrorCode::TooLarge);
  CHECK(testing::code_of([] { gen_exponential_pareto(3, 2); }) == ErrorCode::TooSmall);
  for (std::size_t k = 2; k <= 12; ++k) CHECK_NOTHROW(gen_exponential_pareto(k));
}

TEST_CASE("exponential family: a 2 in the top diagonal cell lowers both objectives") {
  // Only cell (k, k) changes: its price falls from k + a_k to k.
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto g = gen_exponential_pareto(k);
    for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
      auto d = diagonal_of(mask, k);
      const ObjectivePoint one = evaluate(diagonal_mechanism(d), g.instance);
      d.back() = 2;
      const ObjectivePoint two = evaluate(diagonal_mechanism(d), g.instance);
      CHECK(one.welfare > two.welfare);
      CHECK(one.revenue > two.revenue);
    }
  }
}

TEST_CASE("exponential family: flips below the top cell trade welfare for revenue") {
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto g = gen_exponential_pareto(k);
    for (int mask = 0; mask < (1 << k); ++mask) {
      const auto d = diagonal_of(mask, k);
      for (std::size_t i = 0; i + 1 < k; ++i) {
        if (d[i] != 1) continue;
        auto f = d;
        f[i] = 2;
        const ObjectivePoint one = evaluate(diagonal_mechanism(d), g.instance);
        const ObjectivePoint two = evaluate(diagonal_mechanism(f), g.instance);
        CHECK(one.welfare > two.welfare);
        CHECK(one.revenue < two.revenue);
      }
    }
  }
}

TEST_CASE("exponential family with ratio 5: prefix orderings and undominated diagonals") {
  // With differing tails the ordering can fail: (2,1,1) has more welfare than (1,2,1).
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto g = gen_exponential_pareto(k, 5);
    auto eval = [&](const std::vector<int>& d) { return evaluate(diagonal_mechanism(d), g.instance); };
    // (1..1, 2, tail) against (2..2, 1, tail): one 2 at position i costs more
    // welfare and earns more revenue than 2s at every lower position. The top
    // cell is excluded since a 2 there lowers revenue too.
    for (std::size_t i = 0; i + 1 < k; ++i) {
      for (int tail = 0; tail < (1 << (k - i - 1)); ++tail) {
        std::vector<int> a(k, 1), b(k, 2);
        a[i] = 2;
        b[i] = 1;
        for (std::size_t t = i + 1; t < k; ++t) a[t] = b[t] = (tail >> (t - i - 1)) & 1 ? 2 : 1;
        const ObjectivePoint pa = eval(a), pb = eval(b);
        CHECK(pa.welfare < pb.welfare);
        CHECK(pa.revenue > pb.revenue);
      }
    }
    const auto cloud = oracle_cloud(g.instance);
    for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
      const ObjectivePoint p = eval(diagonal_of(mask, k));
      for (const auto& q : cloud) CHECK_FALSE((dominates(q, p) && !(q == p)));
    }
  }
}

TEST_CASE("binary partition construction") {
  const auto g = gen_binary_partition(rationals({1, 1}));
  CHECK(g.instance.num_bidders() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(g.instance.marginal(i).values[1] == R(2 << i));
    CHECK(g.instance.marginal(i).masses == std::vector<Rational>{R(1, 2), R(1, 2)});
  }
  Rational prefix = 0;
  for (std::size_t i = 0; i < g.instance.num_bidders(); ++i) {
    CHECK(g.instance.marginal(i).values[1] > prefix);
    prefix += g.instance.marginal(i).values[1];
  }
  for (const auto& b : {rationals({1, 1}), rationals({2, 1, 1})}) {
    const auto gb = gen_binary_partition(b);
    const auto cloud = oracle_cloud(gb.instance);
    CAPTURE(gb.meta("B"));
    CHECK(std::any_of(cloud.begin(), cloud.end(), [&](const ObjectivePoint& p) { return p.welfare == gb.target("welfare"); }));
  }
  CHECK(testing::code_of([] { gen_binary_partition(rationals({1})); }) == ErrorCode::TooSmall);
}
