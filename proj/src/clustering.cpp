#include <swarmfocus/clustering.hpp>

#include <algorithm>
#include <stdexcept>

namespace swarmfocus {

std::vector<VertexId> sorted_neighborhood(const SwarmGraph& graph, VertexId v)
{
  std::vector<VertexId> out;
  for (const auto& [u, w] : graph.neighbors(v))
    out.push_back(u);
  std::stable_sort(out.begin(), out.end(),
    [&](VertexId a, VertexId b)
    {
      return graph.vertex(a).weight > graph.vertex(b).weight;
    });
  return out;
}

std::vector<VertexId> ClusterState::members() const
{
  std::vector<VertexId> out;
  for (VertexId v = 0; v < cluster.size(); ++v)
    if (cluster[v])
      out.push_back(v);
  return out;
}

ClusterState grow_cluster(const SwarmGraph& graph, VertexId leader, std::size_t target)
{
  if (leader >= graph.size())
    throw std::out_of_range("grow_cluster: leader is not a vertex");
  if (target < 1)
    throw std::invalid_argument("grow_cluster: target size must be at least 1");

  const std::size_t n = graph.size();
  ClusterState s;
  s.cluster.assign(n, false);
  s.completed.assign(n, false);
  s.phase.assign(n, 1);
  s.scan.assign(n, 0);
  s.target = target;
  if (target > n)
  {
    s.target = n;
    s.target_clamped = true;
  }

  std::vector<std::vector<VertexId>> sorted(n);
  for (VertexId v = 0; v < n; ++v)
    sorted[v] = sorted_neighborhood(graph, v);

  s.cluster[leader] = true;
  s.size = 1;

  // The token is resident on the top vertex; a hop pushes, exhausting all
  // three phases pops back to the sender.
  std::vector<VertexId> token{leader};
  while (!token.empty())
  {
    const VertexId vi = token.back();
    int& phase = s.phase[vi];
    std::size_t& k = s.scan[vi];
    const std::size_t deg = sorted[vi].size();

    if (phase > 3)
    {
      token.pop_back();
      continue;
    }

    if (!(k < deg && s.size < s.target))
    {
      ++phase;
      k = 0;
      continue;
    }

    ++k;
    const VertexId vj = sorted[vi][k - 1];
    bool hop = false;
    if (!s.cluster[vj] || phase == 3)
    {
      if (phase < 3)
      {
        s.cluster[vj] = true;
        ++s.size;
      }
      const bool better = phase == 1
        && graph.vertex(vj).weight > graph.edge_weight(vi, vj);
      const bool forced = phase == 2;
      const bool revisit = phase == 3 && !s.completed[vj];
      hop = s.size < s.target && (better || forced || revisit);
    }
    if (phase == 2 && k == deg)
      s.completed[vi] = true;

    if (hop)
    {
      s.hops.push_back({vi, vj, HopMessage{s.size}});
      token.push_back(vj);
    }
  }

  return s;
}

void apply_cluster_flags(SwarmGraph& graph, const ClusterState& state)
{
  for (VertexId v = 0; v < graph.size(); ++v)
  {
    graph.vertex(v).in_cluster = state.cluster[v];
    graph.vertex(v).completed = state.completed[v];
  }
}

} // namespace swarmfocus
