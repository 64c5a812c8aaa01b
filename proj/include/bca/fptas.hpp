#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bca/instance.hpp"
#include "bca/mechanism.hpp"
#include "bca/rational.hpp"

namespace bca {

struct GapQuery {
  ObjectivePoint bound;  // (W0, R0), both > 0
  Rational delta;        // > 0
};

/// Either a mechanism dominating the bound, or (empty) a certificate that no
/// mechanism reaches (1 + delta) times the bound in both coordinates.
struct GapAnswer {
  std::optional<Mechanism> mechanism;

  bool found() const noexcept { return mechanism.has_value(); }
};

/// Rounded joint peel recurrence with grids delta*W0/(4(h1+h2)) and
/// delta*R0/(4(h1+h2)). Errors: ArityError, NonPositiveBound, NonPositiveDelta.
GapAnswer gap_query(const Instance& inst, const GapQuery& query);

struct EpsParetoResult {
  /// Mutually undominated, welfare ascending.
  std::vector<Mechanism> mechanisms;
  Rational lower;              // smallest positive objective unit
  Rational upper;              // bound on both objectives
  std::size_t gap_calls = 0;
};

/// Set of feasible mechanisms eps-covering every feasible mechanism's point.
/// Errors: ArityError, NonPositiveEps.
EpsParetoResult eps_pareto(const Instance& inst, const Rational& eps);

}  // namespace bca
