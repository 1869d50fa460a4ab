#ifndef SWARMFOCUS__SVG_HPP
#define SWARMFOCUS__SVG_HPP

#include <swarmfocus/dispatch.hpp>
#include <swarmfocus/snapshot.hpp>

#include <string>

namespace swarmfocus {

/// Scenario, agents (cluster members filled red, contact agents ringed),
/// edges and the event source. Output bytes depend only on the input.
std::string snapshot_svg(const Snapshot& snapshot, const std::string& title = {});

/// h over accepted micro-steps, with session boundaries as vertical ticks and
/// new-edge steps marked.
std::string trace_svg(const DispatchTrace& trace, const std::string& title = {});

} // namespace swarmfocus

#endif // SWARMFOCUS__SVG_HPP
