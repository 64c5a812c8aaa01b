#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "bca/instance.hpp"
#include "bca/mechanism.hpp"
#include "bca/rational.hpp"

namespace bca {

/// Node ids: tuples first (flat tuple index), then dummy nodes.
struct GraphNode {
  std::size_t tuple = 0;
  int bidder = 0;  // 0 for tuple nodes, 1-based bidder for dummies
  bool is_dummy() const noexcept { return bidder != 0; }
};

struct GraphEdge {
  std::size_t u = 0;  // tuple node; for tuple-tuple edges the tuple with the low coordinate
  std::size_t v = 0;
  int bidder = 0;     // 1-based bidder that wins on this edge
  Rational welfare;
  Rational revenue;
};

/// Graph whose matchings are exactly the feasible mechanisms of a binary-valued
/// auction. Tuples differing in one coordinate are joined; each high
/// coordinate of a tuple gets its own dummy neighbour.
class AuctionGraph {
 public:
  const Instance& instance() const noexcept { return inst_; }
  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  std::size_t num_tuples() const noexcept { return inst_.num_tuples(); }
  std::string label(std::size_t node) const;
  /// Edge ids incident to a node.
  const std::vector<std::size_t>& incident(std::size_t node) const { return incident_[node]; }

  friend AuctionGraph build_graph(const Instance& inst, std::size_t max_bidders);

 private:
  explicit AuctionGraph(Instance inst) : inst_(std::move(inst)) {}
  Instance inst_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Errors: NotBinary (some support size is not 2), CorrelatedUnsupported,
/// LimitExceeded (more than `max_bidders` bidders).
AuctionGraph build_graph(const Instance& inst, std::size_t max_bidders = 4);

/// A matching as a list of edge ids.
using Matching = std::vector<std::size_t>;

/// Visits every matching (including the empty one) exactly once.
void enumerate_matchings(const AuctionGraph& g, const std::function<void(const Matching&)>& visit);

/// Summed (welfare, revenue) edge weights.
ObjectivePoint matching_weight(const AuctionGraph& g, const Matching& m);

/// Unmatched tuple: no sale; matched to a dummy or along coordinate i: bidder i wins.
/// Errors: NotAMatching (bad edge id or a node covered twice).
Mechanism matching_to_mechanism(const AuctionGraph& g, const Matching& m);

/// One line per edge: "u_label v_label welfare revenue".
void write_edge_list(std::ostream& out, const AuctionGraph& g);

}  // namespace bca
