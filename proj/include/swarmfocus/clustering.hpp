#ifndef SWARMFOCUS__CLUSTERING_HPP
#define SWARMFOCUS__CLUSTERING_HPP

#include <swarmfocus/netgraph.hpp>

#include <cstddef>
#include <vector>

namespace swarmfocus {

/// N_i sorted by descending vertex weight, ties by ascending id.
std::vector<VertexId> sorted_neighborhood(const SwarmGraph& graph, VertexId v);

/// The only payload a clustering hop carries between agents.
struct HopMessage
{
  std::size_t cluster_size = 0;
};

struct Hop
{
  VertexId from = 0;
  VertexId to = 0;
  HopMessage message;
};

struct ClusterState
{
  Membership cluster;
  Membership completed;
  /// Phase counter per vertex (1..3; 4 once all phases are exhausted).
  std::vector<int> phase;
  /// Scan index into the sorted neighbourhood, per vertex.
  std::vector<std::size_t> scan;
  std::size_t target = 1;
  std::size_t size = 0;
  /// Set when the requested size exceeded the vertex count.
  bool target_clamped = false;
  std::vector<Hop> hops;

  std::vector<VertexId> members() const;
};

/// Greedy three-phase cluster growth from `leader`. Requires vertex and edge
/// weights. The recursive self-call of the growth procedure is executed as
/// a hop to the examined neighbour; per-vertex counters persist, so a vertex
/// reached again resumes where it stopped.
ClusterState grow_cluster(const SwarmGraph& graph, VertexId leader, std::size_t target);

/// Copies the membership and completion flags onto the graph vertices.
void apply_cluster_flags(SwarmGraph& graph, const ClusterState& state);

} // namespace swarmfocus

#endif // SWARMFOCUS__CLUSTERING_HPP
