#include "bca/matching_graph.hpp"

#include <ostream>

#include "bca/error.hpp"

namespace bca {

std::string AuctionGraph::label(std::size_t node) const {
  const GraphNode& n = nodes_.at(node);
  TupleIndexer idx(inst_.shape());
  std::string s = "(";
  for (std::size_t axis = 0; axis < idx.rank(); ++axis) {
    if (axis > 0) s += ",";
    s += std::to_string(idx.coord(n.tuple, axis) + 1);
  }
  s += ")";
  if (n.is_dummy()) s = "d" + std::to_string(n.bidder) + s;
  return s;
}

AuctionGraph build_graph(const Instance& inst, std::size_t max_bidders) {
  const std::size_t n = inst.num_bidders();
  for (std::size_t b = 0; b < n; ++b) {
    if (inst.support_size(b) != 2) {
      throw Error(ErrorCode::NotBinary, "bidder " + std::to_string(b + 1) + " does not have exactly 2 values");
    }
  }
  if (inst.is_correlated()) throw Error(ErrorCode::CorrelatedUnsupported, "graph weights need independent bidders");
  if (n > max_bidders) {
    throw Error(ErrorCode::LimitExceeded, std::to_string(n) + " bidders exceeds the limit of " + std::to_string(max_bidders));
  }

  AuctionGraph g(inst);
  const TupleIndexer idx(inst.shape());
  const std::size_t tuples = idx.size();
  for (std::size_t t = 0; t < tuples; ++t) g.nodes_.push_back({t, 0});

  // Mass of the other coordinates of tuple t, with coordinate `axis` removed.
  auto context_mass = [&](std::size_t t, std::size_t axis) {
    Rational m = 1;
    for (std::size_t b = 0; b < n; ++b) {
      if (b != axis) m *= inst.marginal(b).masses[idx.coord(t, b)];
    }
    return m;
  };

  for (std::size_t t = 0; t < tuples; ++t) {
    for (std::size_t axis = 0; axis < n; ++axis) {
      const auto& marg = inst.marginal(axis);
      const Rational ctx = context_mass(t, axis);
      if (idx.coord(t, axis) == 0) {
        GraphEdge e;
        e.u = t;
        e.v = t + idx.stride(axis);
        e.bidder = static_cast<int>(axis) + 1;
        e.welfare = ctx * (marg.masses[0] * marg.values[0] + marg.masses[1] * marg.values[1]);
        e.revenue = ctx * marg.values[0] * (marg.masses[0] + marg.masses[1]);
        g.edges_.push_back(std::move(e));
      } else {
        const std::size_t dummy = g.nodes_.size();
        g.nodes_.push_back({t, static_cast<int>(axis) + 1});
        const Rational w = ctx * marg.masses[1] * marg.values[1];
        g.edges_.push_back({t, dummy, static_cast<int>(axis) + 1, w, w});
      }
    }
  }
  g.incident_.assign(g.nodes_.size(), {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    g.incident_[g.edges_[e].u].push_back(e);
    g.incident_[g.edges_[e].v].push_back(e);
  }
  return g;
}

namespace {

void extend(const AuctionGraph& g, std::size_t node, std::vector<char>& covered, Matching& current,
            const std::function<void(const Matching&)>& visit) {
  const std::size_t total = g.nodes().size();
  while (node < total && covered[node]) ++node;
  if (node == total) {
    visit(current);
    return;
  }
  // Leave `node` unmatched.
  covered[node] = 1;
  extend(g, node + 1, covered, current, visit);
  // Or match it to a later uncovered node; earlier nodes are all decided.
  for (std::size_t e : g.incident(node)) {
    const auto& edge = g.edges()[e];
    const std::size_t other = edge.u == node ? edge.v : edge.u;
    if (covered[other]) continue;
    covered[other] = 1;
    current.push_back(e);
    extend(g, node + 1, covered, current, visit);
    current.pop_back();
    covered[other] = 0;
  }
  covered[node] = 0;
}

}  // namespace

void enumerate_matchings(const AuctionGraph& g, const std::function<void(const Matching&)>& visit) {
  std::vector<char> covered(g.nodes().size(), 0);
  Matching current;
  extend(g, 0, covered, current, visit);
}

ObjectivePoint matching_weight(const AuctionGraph& g, const Matching& m) {
  ObjectivePoint p{0, 0};
  for (std::size_t e : m) {
    p.welfare += g.edges().at(e).welfare;
    p.revenue += g.edges().at(e).revenue;
  }
  return p;
}

Mechanism matching_to_mechanism(const AuctionGraph& g, const Matching& m) {
  std::vector<char> covered(g.nodes().size(), 0);
  AllocationMatrix a(g.instance().shape());
  for (std::size_t e : m) {
    if (e >= g.edges().size()) throw Error(ErrorCode::NotAMatching, "edge id " + std::to_string(e) + " out of range");
    const auto& edge = g.edges()[e];
    for (std::size_t node : {edge.u, edge.v}) {
      if (covered[node]) throw Error(ErrorCode::NotAMatching, "node " + g.label(node) + " covered twice");
      covered[node] = 1;
      if (!g.nodes()[node].is_dummy()) a[g.nodes()[node].tuple] = edge.bidder;
    }
  }
  return make_mechanism(std::move(a), g.instance());
}

void write_edge_list(std::ostream& out, const AuctionGraph& g) {
  for (const auto& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << format_rational(e.welfare) << ' '
        << format_rational(e.revenue) << '\n';
  }
}

}  // namespace bca
