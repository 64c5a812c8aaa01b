#include "bca/generators.hpp"

#include <numeric>
#include <stdexcept>

#include "bca/error.hpp"

namespace bca {

namespace {

Rational sum_of(std::span<const Rational> xs) {
  Rational total = 0;
  for (const auto& x : xs) total += x;
  return total;
}

void require_positive_list(std::span<const Rational> xs, const char* what) {
  if (xs.size() < 2) throw Error(ErrorCode::TooSmall, std::string(what) + " needs at least 2 elements");
  for (const auto& x : xs) {
    if (x <= 0) throw Error(ErrorCode::TooSmall, std::string(what) + " elements must be positive");
  }
}

std::string join(std::span<const Rational> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += format_rational(xs[i]);
  }
  return out;
}

Rational pow_rational(const Rational& base, std::size_t exponent) {
  Rational r = 1;
  for (std::size_t i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

const Rational& GeneratedInstance::target(const std::string& name) const {
  for (const auto& [key, value] : targets) {
    if (key == name) return value;
  }
  throw std::out_of_range("no target named " + name);
}

const std::string& GeneratedInstance::meta(const std::string& name) const {
  for (const auto& [key, value] : metadata) {
    if (key == name) return value;
  }
  throw std::out_of_range("no metadata named " + name);
}

GeneratedInstance gen_nonconvex() {
  const std::vector<Rational> masses{Rational(1, 3), Rational(2, 3)};
  return GeneratedInstance{
      make_independent({{{11, 20}, masses}, {{2, 5}, masses}}),
      {},
      {{"family", "nonconvex"}},
  };
}

GeneratedInstance gen_partition_welfare(std::span<const Rational> b) {
  require_positive_list(b, "partition set");
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (b[i] < b[i + 1]) throw Error(ErrorCode::NotDescending, "partition set must be in descending order");
  }
  const std::size_t k = b.size();
  const Rational kk(static_cast<long>(k));
  const Rational total = sum_of(b);
  std::vector<Rational> scaled;
  for (const auto& x : b) scaled.push_back(x / (10 * kk * total));

  MarginalDistribution row;
  MarginalDistribution column;
  for (std::size_t i = 1; i <= k; ++i) {
    const Rational ii(static_cast<long>(i));
    row.values.push_back(ii);
    row.masses.push_back(1 / kk);
    column.values.push_back(ii + scaled[i - 1]);
    column.masses.push_back(1 / kk);
  }

  // Unit-mass welfare of the R-class mechanism whose diagonal picks exactly
  // half of the scaled set.
  Rational unit_target = Rational(2, 3) * (kk - 1) * kk * (kk + 1) + Rational(1, 2) * kk * (kk + 1) + 1 / (20 * kk);
  for (std::size_t i = 2; i <= k; ++i) unit_target += Rational(static_cast<long>(i - 1)) * scaled[i - 1];
  const Rational mass_scale = 1 / (kk * kk);

  return GeneratedInstance{
      make_independent({row, column}),
      {{"welfare", unit_target * mass_scale}},
      {{"family", "partition-welfare"},
       {"k", std::to_string(k)},
       {"B", join(b)},
       {"T", format_rational(total)},
       {"unit_mass_target", format_rational(unit_target)},
       {"mass_scale", format_rational(mass_scale)},
       {"rescaled", "true"}},
  };
}

GeneratedInstance gen_partition_bicriterion(std::span<const Rational> a_in, const std::optional<Rational>& eps_in) {
  require_positive_list(a_in, "partition set");
  const std::size_t k = a_in.size();
  const Rational total = sum_of(a_in);
  std::vector<Rational> a;  // 1-based in the formulas below: a[m - 1]
  for (const auto& x : a_in) a.push_back(x / (100 * total));

  const std::size_t support = 2 * k + 1;
  const Rational n(static_cast<long>(support));
  Rational eps;
  if (eps_in) {
    if (*eps_in <= 0) throw Error(ErrorCode::TooSmall, "construction eps must be positive");
    eps = *eps_in;
  } else {
    // Subset sums and half the total are multiples of 1/resolution.
    BigInt resolution = 200;
    for (const auto& x : a) resolution = lcm(resolution, x.get_den());
    const Rational gap = 1 / Rational(resolution);
    eps = Rational(1, 2);
    while (!(eps * 2 * n * n * n < gap)) eps /= 2;
  }

  auto v1 = [&](std::size_t i) -> Rational {
    const Rational ii(static_cast<long>(i));
    if (i == support) return ii;
    if (i % 2 == 1) return ii + a[(i + 1) / 2 - 1];
    const Rational kk(static_cast<long>(k));
    return ii + a[i / 2 - 1] * (1 + 4 / ((2 * kk - ii + 2) * (1 + eps)));
  };
  auto v2 = [&](std::size_t i) -> Rational { return Rational(static_cast<long>(i)); };

  MarginalDistribution bidder1;
  MarginalDistribution bidder2;
  const Rational z = Rational(static_cast<long>(k + 1)) + Rational(static_cast<long>(k)) * eps;
  for (std::size_t i = 1; i <= support; ++i) {
    const Rational f = (i % 2 == 1) ? Rational(1) : eps;
    bidder1.values.push_back(v1(i));
    bidder1.masses.push_back(f / z);
    bidder2.values.push_back(v2(i));
    bidder2.masses.push_back(f / z);
  }

  // Unit-mass welfare and revenue of the L-shaped blocks at odd indices when
  // the diagonal cell goes to bidder 2 (welfare) or bidder 1 (revenue), minus
  // the diagonal value itself.
  const Rational kk(static_cast<long>(k));
  Rational welfare = 0;
  Rational revenue = 0;
  for (std::size_t i = 1; i + 1 < support; i += 2) {
    const Rational ii(static_cast<long>(i));
    Rational x = 0;
    Rational light = 0;
    for (std::size_t j = (i + 1) / 2; j <= k; ++j) {
      x += v1(2 * j + 1) + v2(2 * j + 1);
      light += v1(2 * j) + v2(2 * j);
    }
    x += eps * light;
    const Rational half_tail = (2 * kk - ii + 1) / 2;
    const Rational rev_1 = v1(i) * (half_tail * (1 + eps) + 1) + v2(i + 1) * ((2 * kk - ii - 1) / 2 + half_tail * eps + 1);
    const Rational y = rev_1 - v2(i);
    welfare += ii + x;
    revenue += ii + y;
  }
  const Rational half_a = sum_of(a) / 2;
  welfare += n + half_a;
  revenue += n + half_a;
  const Rational mass_scale = 1 / (z * z);

  return GeneratedInstance{
      make_independent({bidder1, bidder2}),
      {{"welfare", welfare * mass_scale}, {"revenue", revenue * mass_scale}},
      {{"family", "partition-bicriterion"},
       {"k", std::to_string(k)},
       {"A", join(a_in)},
       {"A_scaled", join(a)},
       {"eps", format_rational(eps)},
       {"unit_mass_welfare", format_rational(welfare)},
       {"unit_mass_revenue", format_rational(revenue)},
       {"mass_scale", format_rational(mass_scale)},
       {"rescaled", "true"}},
  };
}

GeneratedInstance gen_exponential_pareto(std::size_t k, std::size_t base) {
  if (k < 2) throw Error(ErrorCode::TooSmall, "exponential family needs k >= 2");
  if (base < 2) throw Error(ErrorCode::TooSmall, "exponential family needs base >= 2");
  if (k > 12) throw Error(ErrorCode::TooLarge, "exponential family is capped at k = 12");
  const Rational b(static_cast<unsigned long>(base));
  const Rational norm = 1000 * (pow_rational(b, k) - 1) / (b - 1) + 1;
  std::vector<Rational> a;
  for (std::size_t i = 0; i < k; ++i) a.push_back(pow_rational(b, i) / norm);

  const Rational kk(static_cast<long>(k));
  bool prefix_ratio = true;
  for (std::size_t i = 1; i < k; ++i) {
    const Rational rest = kk - Rational(static_cast<long>(i));
    if (!(a[i - 1] < rest / (rest + 1) * a[i])) throw Error(ErrorCode::TooSmall, "base too small for the flip-order condition");
    if (!(a[i - 1] < rest / (2 * (rest + 1)) * a[i])) prefix_ratio = false;
  }
  Rational prefix = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(prefix < a[i])) throw std::logic_error("super-increasing precondition fails");
    prefix += a[i];
  }
  if (!(prefix < Rational(1, 1000))) throw std::logic_error("perturbations too large");

  MarginalDistribution bidder1;
  MarginalDistribution bidder2;
  for (std::size_t i = 1; i <= k; ++i) {
    const Rational ii(static_cast<long>(i));
    bidder1.values.push_back(ii + a[i - 1]);
    bidder1.masses.push_back(1 / kk);
    bidder2.values.push_back(ii);
    bidder2.masses.push_back(1 / kk);
  }
  return GeneratedInstance{
      make_independent({bidder1, bidder2}),
      {},
      {{"family", "exponential"},
       {"k", std::to_string(k)},
       {"base", std::to_string(base)},
       {"N", format_rational(norm)},
       {"perturbations", join(a)},
       {"prefix_ratio_condition", prefix_ratio ? "true" : "false"}},
  };
}

AllocationMatrix diagonal_mechanism(std::span<const int> diagonal) {
  const std::size_t k = diagonal.size();
  AllocationMatrix m({k, k});
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m.at(i, j) = j > i ? 2 : (j < i ? 1 : diagonal[i]);
  }
  return m;
}

GeneratedInstance gen_binary_partition(std::span<const Rational> b_in) {
  require_positive_list(b_in, "partition set");
  const std::size_t k = b_in.size();
  const Rational total = sum_of(b_in);
  std::vector<MarginalDistribution> bidders;
  Rational high_sum = 0;
  Rational low_sum = 0;
  std::vector<Rational> scaled;
  for (std::size_t i = 1; i <= k; ++i) {
    const Rational low = b_in[i - 1] / (100 * total);
    const Rational high = pow_rational(Rational(2), i);
    scaled.push_back(low);
    bidders.push_back({{low, high}, {Rational(1, 2), Rational(1, 2)}});
    high_sum += high;
    low_sum += low;
  }
  const Rational unit_target = high_sum + low_sum / 2;
  const Rational mass_scale = 1 / pow_rational(Rational(2), k);
  return GeneratedInstance{
      make_independent(std::move(bidders)),
      {{"welfare", unit_target * mass_scale}},
      {{"family", "binary-partition"},
       {"k", std::to_string(k)},
       {"B", join(b_in)},
       {"B_scaled", join(scaled)},
       {"unit_mass_target", format_rational(unit_target)},
       {"mass_scale", format_rational(mass_scale)},
       {"rescaled", "true"}},
  };
}

}  // namespace bca
