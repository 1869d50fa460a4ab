#include <swarmfocus/consensus.hpp>

#include <deque>
#include <numeric>

namespace swarmfocus {

ConsensusState::ConsensusState(const SwarmGraph& graph, const Membership& subset)
: graph_(graph), subset_(subset), best_(graph.size())
{
  for (VertexId v = 0; v < graph.size(); ++v)
    best_[v] = {graph.vertex(v).weight, v};
}

bool ConsensusState::step(const std::vector<VertexId>& order)
{
  std::vector<VertexId> sweep = order;
  if (sweep.empty())
  {
    sweep.resize(graph_.size());
    std::iota(sweep.begin(), sweep.end(), VertexId{0});
  }

  const std::vector<LeaderCandidate> previous = best_;
  bool changed = false;
  for (VertexId v : sweep)
  {
    if (!subset_[v])
      continue;
    LeaderCandidate b = previous[v];
    for (const auto& [u, w] : graph_.neighbors(v))
      if (subset_[u] && previous[u].beats(b))
        b = previous[u];
    if (b.id != best_[v].id)
      changed = true;
    best_[v] = b;
  }
  if (changed)
    ++rounds_;
  return changed;
}

ConsensusResult max_consensus(
  const SwarmGraph& graph, const Membership& subset, VertexId start)
{
  if (start >= graph.size() || !subset[start])
    throw ConsensusError("max_consensus: start vertex is not in the subgraph", {});

  std::vector<bool> seen(graph.size(), false);
  std::deque<VertexId> queue{start};
  seen[start] = true;
  while (!queue.empty())
  {
    const VertexId v = queue.front();
    queue.pop_front();
    for (const auto& [u, w] : graph.neighbors(v))
      if (subset[u] && !seen[u])
      {
        seen[u] = true;
        queue.push_back(u);
      }
  }
  std::vector<VertexId> unreachable;
  for (VertexId v = 0; v < graph.size(); ++v)
    if (subset[v] && !seen[v])
      unreachable.push_back(v);
  if (!unreachable.empty())
  {
    std::string names;
    for (auto v : unreachable)
      names += (names.empty() ? "" : ",") + std::to_string(v);
    throw ConsensusError(
      "max_consensus: subgraph is disconnected; unreachable from "
        + std::to_string(start) + ": {" + names + "}",
      std::move(unreachable));
  }

  ConsensusState state(graph, subset);
  while (state.step())
  {
  }
  return {state.best(start).id, state.rounds()};
}

ConsensusResult max_consensus(const SwarmGraph& graph, VertexId start)
{
  return max_consensus(graph, Membership(graph.size(), true), start);
}

} // namespace swarmfocus
