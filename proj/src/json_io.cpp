#include "samon/json_io.hpp"

#include <fstream>
#include <sstream>

namespace samon {

using nlohmann::json;

Literal literal_from_string(const std::string& s) {
    if (s.empty()) throw ConfigError("empty condition literal");
    if (s[0] == '!') return {s.substr(1), false};
    return {s, true};
}

std::string literal_to_string(const Literal& l) {
    return l.positive ? l.name : "!" + l.name;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

PlanLibrary library_from_json(const json& j) {
    if (!j.contains("root") || !j.contains("nodes"))
        throw ConfigError("library needs 'root' and 'nodes'");

    std::vector<PlanNode> nodes;
    for (const auto& jn : j.at("nodes")) {
        PlanNode n;
        n.id = jn.at("id").get<std::string>();
        std::string kind = jn.value("kind", "individual");
        if (kind != "team" && kind != "individual")
            throw ConfigError("node '" + n.id + "': kind must be team or individual");
        n.team = kind == "team";
        for (const auto& c : jn.value("children", json::array()))
            n.children.push_back(c.get<std::string>());
        for (const auto& s : jn.value("pre", json::array()))
            n.preconditions.push_back(literal_from_string(s.get<std::string>()));
        for (const auto& s : jn.value("term", json::array()))
            n.terminations.push_back(literal_from_string(s.get<std::string>()));
        const json sigs = jn.value("signatures", json::object());
        for (const auto& [role, feats] : sigs.items()) {
            Signature sig;
            for (const auto& f : feats) sig.insert(f.get<std::string>());
            n.signatures.emplace(role, std::move(sig));
        }
        nodes.push_back(std::move(n));
    }

    std::set<RoleId> roles;
    if (j.contains("roles"))
        for (const auto& r : j.at("roles")) roles.insert(r.get<std::string>());
    else
        for (const auto& n : nodes)
            for (const auto& [r, s] : n.signatures) roles.insert(r);

    auto root = j.at("root").get<std::string>();
    if (auto violations = validate_nodes(root, nodes); !violations.empty()) {
        std::ostringstream msg;
        msg << "invalid plan library:";
        for (const auto& v : violations) msg << "\n  [" << v.rule << "] " << v.node << ": " << v.detail;
        throw ConfigError(msg.str());
    }
    return PlanLibrary(root, std::move(nodes), std::move(roles));
}

TeamDefinition team_from_json(const json& j) {
    TeamDefinition team;
    for (const auto& jm : j)
        team.members.push_back({jm.at("agent").get<std::string>(), jm.at("role").get<std::string>()});
    if (team.members.size() < 2) throw ConfigError("a team needs at least 2 members");
    std::set<AgentId> seen;
    for (const auto& m : team.members)
        if (!seen.insert(m.agent).second) throw ConfigError("duplicate agent id: " + m.agent);
    return team;
}

}  // namespace samon
