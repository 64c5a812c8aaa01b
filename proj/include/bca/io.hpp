#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bca/generators.hpp"
#include "bca/instance.hpp"
#include "bca/mechanism.hpp"
#include "bca/pareto.hpp"

namespace bca {

/// Reads `{"bidders":[{"values":[..],"probs":[..]}], "joint":[[..]]}`.
/// Entries are rational strings ("p/q", "p", decimals) or JSON integers.
/// Errors: ParseError plus every validate_instance error.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

/// `{"shape":[..],"winners":[..],"payments":[..]}`.
std::string mechanism_to_json(const Mechanism& m);
/// Parses the allocation part of a mechanism file. Errors: ParseError, ShapeMismatch.
AllocationMatrix allocation_from_json(const std::string& text);

/// Target sidecar: `{"targets":{name: rational}, "metadata":{name: string}}`.
std::string targets_to_json(const GeneratedInstance& g);

/// One curve row: exact point plus the id of the mechanism that attains it.
struct CurveRow {
  ObjectivePoint point;
  std::size_t mechanism_id = 0;
};

/// Sorts by welfare ascending, then revenue descending, then id.
void sort_rows(std::vector<CurveRow>& rows);
/// Header `welfare,revenue,mechanism_id`, rows in the order given.
void write_csv(std::ostream& out, const std::vector<CurveRow>& rows);
std::string rows_to_json(const std::vector<CurveRow>& rows);

/// Scatter of the points with their upper-right convex hull drawn as a polyline.
/// Coordinates are decimal approximations; the exact data lives in the CSV.
std::string render_svg(const std::vector<ObjectivePoint>& points, const std::string& title = "");

}  // namespace bca
