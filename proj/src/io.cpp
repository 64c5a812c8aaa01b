#include "bca/io.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "bca/error.hpp"
#include "json.hpp"

namespace bca {

using nlohmann::json;

namespace {

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  throw Error(ErrorCode::ParseError, "expected a rational string or integer, got " + j.dump());
}

std::vector<Rational> rational_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

json rational_array(const std::vector<Rational>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(format_rational(x));
  return arr;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("bidders") || !doc["bidders"].is_array()) {
    throw Error(ErrorCode::ParseError, "missing \"bidders\" array");
  }
  RawInstance raw;
  for (const auto& b : doc["bidders"]) {
    if (!b.is_object() || !b.contains("values")) throw Error(ErrorCode::ParseError, "bidder without \"values\"");
    MarginalDistribution m;
    m.values = rational_list(b["values"], "values");
    if (b.contains("probs")) m.masses = rational_list(b["probs"], "probs");
    raw.bidders.push_back(std::move(m));
  }
  if (doc.contains("joint") && !doc["joint"].is_null()) {
    if (!doc["joint"].is_array()) throw Error(ErrorCode::ParseError, "\"joint\" must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : doc["joint"]) rows.push_back(rational_list(row, "joint row"));
    raw.joint = std::move(rows);
  }
  return validate_instance(raw);
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["bidders"] = json::array();
  for (std::size_t b = 0; b < inst.num_bidders(); ++b) {
    doc["bidders"].push_back({{"values", rational_array(inst.marginal(b).values)},
                              {"probs", rational_array(inst.marginal(b).masses)}});
  }
  if (inst.is_correlated()) {
    json rows = json::array();
    const std::size_t h1 = inst.support_size(0);
    const std::size_t h2 = inst.support_size(1);
    for (std::size_t i = 0; i < h1; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < h2; ++j) row.push_back(format_rational(inst.mass2(i, j)));
      rows.push_back(std::move(row));
    }
    doc["joint"] = std::move(rows);
  }
  return doc.dump(2);
}

std::string mechanism_to_json(const Mechanism& m) {
  json doc;
  doc["shape"] = m.allocation.shape();
  doc["winners"] = m.allocation.winners();
  doc["payments"] = rational_array(m.payments);
  doc["welfare"] = format_rational(m.objectives.welfare);
  doc["revenue"] = format_rational(m.objectives.revenue);
  return doc.dump(2);
}

AllocationMatrix allocation_from_json(const std::string& text) {
  const json doc = parse_json(text);
  try {
    return AllocationMatrix(doc.at("shape").get<std::vector<std::size_t>>(), doc.at("winners").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string targets_to_json(const GeneratedInstance& g) {
  json doc;
  doc["targets"] = json::object();
  for (const auto& [name, value] : g.targets) doc["targets"][name] = format_rational(value);
  doc["metadata"] = json::object();
  for (const auto& [name, value] : g.metadata) doc["metadata"][name] = value;
  return doc.dump(2);
}

void sort_rows(std::vector<CurveRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const CurveRow& a, const CurveRow& b) {
    if (a.point.welfare != b.point.welfare) return a.point.welfare < b.point.welfare;
    if (a.point.revenue != b.point.revenue) return a.point.revenue > b.point.revenue;
    return a.mechanism_id < b.mechanism_id;
  });
}

void write_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "welfare,revenue,mechanism_id\n";
  for (const auto& r : rows) {
    out << format_rational(r.point.welfare) << ',' << format_rational(r.point.revenue) << ',' << r.mechanism_id << '\n';
  }
}

std::string rows_to_json(const std::vector<CurveRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"welfare", format_rational(r.point.welfare)},
                   {"revenue", format_rational(r.point.revenue)},
                   {"mechanism_id", r.mechanism_id}});
  }
  return arr.dump(2);
}

namespace {

// Upper-right hull of the points, welfare ascending.
std::vector<ObjectivePoint> upper_hull(std::vector<ObjectivePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.welfare != b.welfare ? a.welfare < b.welfare : a.revenue > b.revenue;
  });
  std::vector<ObjectivePoint> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && hull.back().welfare == p.welfare) continue;
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational cross = (b.welfare - a.welfare) * (p.revenue - a.revenue) - (b.revenue - a.revenue) * (p.welfare - a.welfare);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  // Drop the rising head: points left of the last revenue maximum are dominated.
  std::size_t top = 0;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    if (hull[i].revenue >= hull[top].revenue) top = i;
  }
  hull.erase(hull.begin(), hull.begin() + static_cast<std::ptrdiff_t>(top));
  return hull;
}

}  // namespace

std::string render_svg(const std::vector<ObjectivePoint>& points, const std::string& title) {
  constexpr double width = 640;
  constexpr double height = 480;
  constexpr double margin = 60;
  double wmin = 0, wmax = 1, rmin = 0, rmax = 1;
  if (!points.empty()) {
    wmin = wmax = to_double(points[0].welfare);
    rmin = rmax = to_double(points[0].revenue);
    for (const auto& p : points) {
      wmin = std::min(wmin, to_double(p.welfare));
      wmax = std::max(wmax, to_double(p.welfare));
      rmin = std::min(rmin, to_double(p.revenue));
      rmax = std::max(rmax, to_double(p.revenue));
    }
  }
  if (wmax - wmin <= 0) wmax = wmin + 1;
  if (rmax - rmin <= 0) rmax = rmin + 1;
  auto sx = [&](const Rational& w) { return margin + (to_double(w) - wmin) / (wmax - wmin) * (width - 2 * margin); };
  auto sy = [&](const Rational& r) { return height - margin - (to_double(r) - rmin) / (rmax - rmin) * (height - 2 * margin); };

  std::ostringstream out;
  out.precision(12);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">welfare</text>\n";
  out << "<text x=\"20\" y=\"" << height / 2 << "\" transform=\"rotate(-90 20 " << height / 2
      << ")\" text-anchor=\"middle\">revenue</text>\n";
  if (!title.empty()) out << "<text x=\"" << width / 2 << "\" y=\"30\" text-anchor=\"middle\">" << title << "</text>\n";
  out << "<text x=\"" << margin << "\" y=\"" << height - margin + 20 << "\">" << wmin << "</text>\n";
  out << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 20 << "\" text-anchor=\"end\">" << wmax
      << "</text>\n";
  out << "<text x=\"" << margin - 5 << "\" y=\"" << height - margin << "\" text-anchor=\"end\">" << rmin << "</text>\n";
  out << "<text x=\"" << margin - 5 << "\" y=\"" << margin << "\" text-anchor=\"end\">" << rmax << "</text>\n";

  const auto hull = upper_hull(points);
  if (hull.size() >= 2) {
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : hull) out << sx(p.welfare) << ',' << sy(p.revenue) << ' ';
    out << "\"/>\n";
  }
  for (const auto& p : points) {
    out << "<circle cx=\"" << sx(p.welfare) << "\" cy=\"" << sy(p.revenue) << "\" r=\"3\" fill=\"crimson\">"
        << "<title>" << format_rational(p.welfare) << ", " << format_rational(p.revenue) << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bca
