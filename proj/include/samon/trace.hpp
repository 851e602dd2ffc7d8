#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "samon/types.hpp"

namespace samon {

/// Off-line execution trace: for each tick, every agent's selected plan.
struct Trace {
    std::vector<AgentId> agents;                          // sorted, fixed
    std::vector<std::map<AgentId, PlanId>> ticks;         // index = tick

    std::size_t tick_count() const { return ticks.size(); }
};

struct TraceFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses CSV with header `tick,agent_id,plan_id`. Ticks must be contiguous
/// from 0 and every agent must appear exactly once per tick; violations raise
/// TraceFormatError naming the offending line.
Trace parse_trace(const std::string& csv_text);
Trace parse_trace_file(const std::string& path);

/// Maximal interval of consecutive non-unanimous ticks. A disagreement still
/// open at the end of the trace closes there.
struct Switch {
    std::size_t begin = 0;  // first non-unanimous tick
    std::size_t end = 0;    // one past the last non-unanimous tick
    std::size_t length() const { return end - begin; }
};

bool unanimous(const std::map<AgentId, PlanId>& tick);

std::vector<Switch> detect_switches(const Trace& t);

/// Mean switch length in ticks, exact. Zero when there are no switches.
Rational average_time_to_agree(const Trace& t);

/// Fraction of unanimous ticks, exact. One for an empty trace.
Rational agreement_level(const Trace& t);

}  // namespace samon
