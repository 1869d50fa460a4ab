#ifndef SWARMFOCUS__CONSENSUS_HPP
#define SWARMFOCUS__CONSENSUS_HPP

#include <swarmfocus/netgraph.hpp>

#include <stdexcept>
#include <vector>

namespace swarmfocus {

/// A (weight, id) candidate. Larger weight wins; ties go to the lower id.
struct LeaderCandidate
{
  double weight = 0.0;
  VertexId id = 0;

  bool beats(const LeaderCandidate& other) const
  {
    return weight > other.weight || (weight == other.weight && id < other.id);
  }
};

/// Synchronous max-consensus state over the vertices of a subgraph.
class ConsensusState
{
public:
  ConsensusState(const SwarmGraph& graph, const Membership& subset);

  /// One synchronous round: every participant adopts the best candidate among
  /// itself and its participating neighbours as of the previous round.
  /// `order` only permutes the update sweep. Returns true if anything changed.
  bool step(const std::vector<VertexId>& order = {});

  const LeaderCandidate& best(VertexId v) const { return best_.at(v); }
  std::size_t rounds() const { return rounds_; }

private:
  const SwarmGraph& graph_;
  Membership subset_;
  std::vector<LeaderCandidate> best_;
  std::size_t rounds_ = 0;
};

class ConsensusError : public std::runtime_error
{
public:
  ConsensusError(const std::string& what, std::vector<VertexId> unreachable)
  : std::runtime_error(what), unreachable_(std::move(unreachable)) {}

  const std::vector<VertexId>& unreachable() const { return unreachable_; }

private:
  std::vector<VertexId> unreachable_;
};

struct ConsensusResult
{
  VertexId leader = 0;
  /// Rounds in which at least one vertex changed its estimate.
  std::size_t rounds = 0;
};

/// Elects the maximum-weight vertex of the subgraph. Throws ConsensusError
/// naming the vertices not reachable from `start` inside the subgraph.
ConsensusResult max_consensus(
  const SwarmGraph& graph, const Membership& subset, VertexId start);

ConsensusResult max_consensus(const SwarmGraph& graph, VertexId start);

} // namespace swarmfocus

#endif // SWARMFOCUS__CONSENSUS_HPP
