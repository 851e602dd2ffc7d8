#include "samon/trace.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace samon {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw TraceFormatError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Trace parse_trace(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw TraceFormatError("empty trace");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "tick,agent_id,plan_id")
        fail(line_no, "expected header 'tick,agent_id,plan_id', got '" + line + "'");

    // tick -> agent -> plan, collected before contiguity checks.
    std::map<std::int64_t, std::map<AgentId, PlanId>> rows;
    std::set<AgentId> agents;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3) fail(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
        std::int64_t tick;
        try {
            std::size_t pos;
            tick = std::stoll(fields[0], &pos);
            if (pos != fields[0].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail(line_no, "bad tick '" + fields[0] + "'");
        }
        if (tick < 0) fail(line_no, "negative tick");
        if (fields[1].empty()) fail(line_no, "empty agent_id");
        if (fields[2].empty()) fail(line_no, "empty plan_id");
        if (!rows[tick].emplace(fields[1], fields[2]).second)
            fail(line_no, "duplicate entry for agent '" + fields[1] + "' at tick " + fields[0]);
        agents.insert(fields[1]);
    }
    if (rows.empty()) throw TraceFormatError("trace has a header but no rows");

    Trace t;
    t.agents.assign(agents.begin(), agents.end());
    std::int64_t expected = 0;
    for (const auto& [tick, by_agent] : rows) {
        if (tick != expected)
            throw TraceFormatError("ticks not contiguous: expected " + std::to_string(expected) +
                                   ", found " + std::to_string(tick));
        for (const auto& a : t.agents)
            if (!by_agent.count(a))
                throw TraceFormatError("agent '" + a + "' missing at tick " + std::to_string(tick));
        t.ticks.push_back(by_agent);
        ++expected;
    }
    return t;
}

Trace parse_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TraceFormatError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_trace(buf.str());
}

bool unanimous(const std::map<AgentId, PlanId>& tick) {
    if (tick.empty()) return true;
    const PlanId& first = tick.begin()->second;
    return std::all_of(tick.begin(), tick.end(),
                       [&](const auto& kv) { return kv.second == first; });
}

std::vector<Switch> detect_switches(const Trace& t) {
    std::vector<Switch> out;
    std::size_t i = 0;
    while (i < t.ticks.size()) {
        if (unanimous(t.ticks[i])) {
            ++i;
            continue;
        }
        Switch s;
        s.begin = i;
        while (i < t.ticks.size() && !unanimous(t.ticks[i])) ++i;
        s.end = i;
        out.push_back(s);
    }
    return out;
}

Rational average_time_to_agree(const Trace& t) {
    auto switches = detect_switches(t);
    if (switches.empty()) return Rational(0);
    std::int64_t total = 0;
    for (const auto& s : switches) total += static_cast<std::int64_t>(s.length());
    return Rational(total, static_cast<std::int64_t>(switches.size()));
}

Rational agreement_level(const Trace& t) {
    if (t.ticks.empty()) return Rational(1);
    std::int64_t agree = 0;
    for (const auto& tick : t.ticks)
        if (unanimous(tick)) ++agree;
    return Rational(agree, static_cast<std::int64_t>(t.ticks.size()));
}

}  // namespace samon
