#include <swarmfocus/netgraph.hpp>

#include <deque>
#include <limits>
#include <stdexcept>

namespace swarmfocus {

VertexId SwarmGraph::add_vertex(Point position, double weight)
{
  vertices_.push_back({position, weight});
  adjacency_.emplace_back();
  return vertices_.size() - 1;
}

void SwarmGraph::add_edge(VertexId i, VertexId j, double weight)
{
  if (i == j)
    throw std::invalid_argument("SwarmGraph: self-loops are not allowed");
  if (i >= size() || j >= size())
    throw std::out_of_range("SwarmGraph: vertex id out of range");
  adjacency_[i][j] = weight;
  adjacency_[j][i] = weight;
}

bool SwarmGraph::has_edge(VertexId i, VertexId j) const
{
  return adjacency_.at(i).contains(j);
}

double SwarmGraph::edge_weight(VertexId i, VertexId j) const
{
  return adjacency_.at(i).at(j);
}

std::size_t SwarmGraph::edge_count() const
{
  std::size_t twice = 0;
  for (const auto& n : adjacency_)
    twice += n.size();
  return twice / 2;
}

std::vector<std::pair<VertexId, VertexId>> SwarmGraph::edges() const
{
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId i = 0; i < size(); ++i)
    for (const auto& [j, w] : adjacency_[i])
      if (i < j)
        out.emplace_back(i, j);
  return out;
}

std::vector<std::vector<double>> SwarmGraph::adjacency_matrix() const
{
  std::vector<std::vector<double>> a(size(), std::vector<double>(size(), 0.0));
  for (VertexId i = 0; i < size(); ++i)
    for (const auto& [j, w] : adjacency_[i])
      a[i][j] = w;
  return a;
}

SwarmGraph SwarmGraph::without_vertex(VertexId id) const
{
  SwarmGraph out;
  auto remap = [id](VertexId v) { return v < id ? v : v - 1; };
  for (VertexId i = 0; i < size(); ++i)
  {
    if (i == id)
      continue;
    out.vertices_.push_back(vertices_[i]);
    out.adjacency_.emplace_back();
  }
  for (VertexId i = 0; i < size(); ++i)
  {
    if (i == id)
      continue;
    for (const auto& [j, w] : adjacency_[i])
      if (j != id)
        out.adjacency_[remap(i)][remap(j)] = w;
  }
  return out;
}

std::vector<Point> SwarmGraph::positions() const
{
  std::vector<Point> out;
  out.reserve(size());
  for (const auto& v : vertices_)
    out.push_back(v.position);
  return out;
}

//==============================================================================
ClusterView ClusterView::from_flags(const SwarmGraph& graph)
{
  Membership m(graph.size());
  for (VertexId i = 0; i < graph.size(); ++i)
    m[i] = graph.vertex(i).in_cluster;
  return {graph, std::move(m)};
}

ClusterView ClusterView::complement() const
{
  Membership m(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    m[i] = !members[i];
  return {graph, std::move(m)};
}

ExactSum cluster_volume_exact(const ClusterView& view)
{
  ExactSum total;
  for (VertexId i = 0; i < view.graph.size(); ++i)
  {
    if (!view.members[i])
      continue;
    long internal = 0;
    for (const auto& [j, w] : view.graph.neighbors(i))
      if (view.members[j])
        ++internal;
    total.add_repeated(view.graph.vertex(i).weight, internal);
  }
  return total;
}

double cluster_volume(const ClusterView& view)
{
  return cluster_volume_exact(view).value();
}

double complement_volume(const ClusterView& view)
{
  return cluster_volume(view.complement());
}

double cut_weight(const ClusterView& view, CutMode mode)
{
  ExactSum total;
  for (const auto& [i, j] : view.graph.edges())
    if (view.members[i] != view.members[j])
      total.add(mode == CutMode::Weighted ? view.graph.edge_weight(i, j) : 1.0);
  return total.value();
}

double graph_volume(const SwarmGraph& graph)
{
  ExactSum total;
  for (VertexId i = 0; i < graph.size(); ++i)
    total.add_repeated(graph.vertex(i).weight, static_cast<long>(graph.degree(i)));
  return total.value();
}

Isoperimetric isoperimetric(const ClusterView& view, CutMode mode)
{
  Isoperimetric out;
  out.eps_s = cluster_volume(view);
  out.eps_sbar = complement_volume(view);
  out.eps_c = cut_weight(view, mode);

  if (out.eps_s <= 0.0 || out.eps_sbar <= 0.0)
  {
    out.value = std::numeric_limits<double>::infinity();
    out.cluster_term = out.eps_s <= 0.0 ? out.value : out.eps_c / out.eps_s;
    out.complement_term = out.eps_sbar <= 0.0 ? out.value : out.eps_c / out.eps_sbar;
    out.diagnostic = out.eps_s <= 0.0
      ? "cluster has zero internal volume"
      : "complement has zero internal volume";
    return out;
  }

  out.cluster_term = out.eps_c / out.eps_s;
  out.complement_term = out.eps_c / out.eps_sbar;
  out.value = out.cluster_term + out.complement_term;
  return out;
}

bool is_connected(const SwarmGraph& graph, const Membership& subset)
{
  VertexId start = graph.size();
  std::size_t count = 0;
  for (VertexId i = 0; i < graph.size(); ++i)
  {
    if (!subset[i])
      continue;
    ++count;
    if (start == graph.size())
      start = i;
  }
  if (count <= 1)
    return true;

  std::vector<bool> seen(graph.size(), false);
  std::deque<VertexId> queue{start};
  seen[start] = true;
  std::size_t reached = 1;
  while (!queue.empty())
  {
    const VertexId v = queue.front();
    queue.pop_front();
    for (const auto& [u, w] : graph.neighbors(v))
    {
      if (!subset[u] || seen[u])
        continue;
      seen[u] = true;
      ++reached;
      queue.push_back(u);
    }
  }
  return reached == count;
}

bool is_connected(const SwarmGraph& graph)
{
  return is_connected(graph, Membership(graph.size(), true));
}

void weigh_edges_from_vertices(SwarmGraph& graph)
{
  for (const auto& [i, j] : graph.edges())
    graph.add_edge(i, j, 0.5 * (graph.vertex(i).weight + graph.vertex(j).weight));
}

bool visible_pair(Point a, Point b, const Scenario& scenario, double r_v)
{
  return distance(a, b) <= r_v && segment_clear(a, b, scenario);
}

SwarmGraph build_visibility_graph(
  const std::vector<Point>& positions, const Scenario& scenario, double r_v)
{
  SwarmGraph g;
  for (auto p : positions)
    g.add_vertex(p);
  for (VertexId i = 0; i < positions.size(); ++i)
    for (VertexId j = i + 1; j < positions.size(); ++j)
      if (visible_pair(positions[i], positions[j], scenario, r_v))
        g.add_edge(i, j);
  return g;
}

} // namespace swarmfocus
