#ifndef SWARMFOCUS__NETGRAPH_HPP
#define SWARMFOCUS__NETGRAPH_HPP

#include <swarmfocus/exact_sum.hpp>
#include <swarmfocus/geometry.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace swarmfocus {

using VertexId = std::size_t;

/// The base station spawns every agent and is the first one placed.
inline constexpr VertexId kBaseStation = 0;

struct Vertex
{
  Point position;
  double weight = 1.0;
  bool in_cluster = false;
  bool completed = false;
  bool contact = false;
};

//==============================================================================
/// Undirected weighted communication graph. Ids are dense and every
/// enumeration runs in ascending id order.
class SwarmGraph
{
public:
  using Neighborhood = std::map<VertexId, double>;

  VertexId add_vertex(Point position, double weight = 1.0);

  /// Inserts (or re-weights) the undirected edge {i, j}. Self-loops throw.
  void add_edge(VertexId i, VertexId j, double weight = 1.0);

  bool has_edge(VertexId i, VertexId j) const;
  double edge_weight(VertexId i, VertexId j) const;

  std::size_t size() const { return vertices_.size(); }
  std::size_t degree(VertexId i) const { return adjacency_.at(i).size(); }
  std::size_t edge_count() const;

  const Vertex& vertex(VertexId i) const { return vertices_.at(i); }
  Vertex& vertex(VertexId i) { return vertices_.at(i); }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  const Neighborhood& neighbors(VertexId i) const { return adjacency_.at(i); }

  /// Edges as (i, j) with i < j, lexicographically ordered.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  /// Dense adjacency matrix of edge weights (0 where absent).
  std::vector<std::vector<double>> adjacency_matrix() const;

  /// Copy with vertex `id` removed and the remaining ids compacted.
  SwarmGraph without_vertex(VertexId id) const;

  std::vector<Point> positions() const;

private:
  std::vector<Vertex> vertices_;
  std::vector<Neighborhood> adjacency_;
};

//==============================================================================
using Membership = std::vector<bool>;

/// A cluster G_CL as a membership predicate over a graph; the complement is
/// implied.
struct ClusterView
{
  const SwarmGraph& graph;
  Membership members;

  static ClusterView from_flags(const SwarmGraph& graph);
  ClusterView complement() const;
};

enum class CutMode { Weighted, Cardinal };

/// eps_S: sum over members of |v| times the count of member neighbours.
double cluster_volume(const ClusterView& view);
ExactSum cluster_volume_exact(const ClusterView& view);

/// Same quantity for the complement.
double complement_volume(const ClusterView& view);

/// eps_C = |dG_CL|.
double cut_weight(const ClusterView& view, CutMode mode = CutMode::Weighted);

/// Sum of |v_i| deg(v_i) over the whole graph.
double graph_volume(const SwarmGraph& graph);

struct Isoperimetric
{
  double value = 0.0;
  double cluster_term = 0.0;
  double complement_term = 0.0;
  double eps_s = 0.0;
  double eps_sbar = 0.0;
  double eps_c = 0.0;
  /// Set when either side has zero volume (value is then +infinity).
  std::optional<std::string> diagnostic;
};

Isoperimetric isoperimetric(const ClusterView& view, CutMode mode = CutMode::Weighted);

/// Breadth-first reachability inside the induced subgraph.
bool is_connected(const SwarmGraph& graph, const Membership& subset);
bool is_connected(const SwarmGraph& graph);

/// |e_ij| <- (|v_i| + |v_j|) / 2 for every edge.
void weigh_edges_from_vertices(SwarmGraph& graph);

/// Within r_v (inclusive) and with a barrier-free line of sight.
bool visible_pair(Point a, Point b, const Scenario& scenario, double r_v);

/// Visibility graph over `positions` with unit weights.
SwarmGraph build_visibility_graph(
  const std::vector<Point>& positions, const Scenario& scenario, double r_v);

} // namespace swarmfocus

#endif // SWARMFOCUS__NETGRAPH_HPP
