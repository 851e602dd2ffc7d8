#include "samon/plan_model.hpp"

#include <algorithm>
#include <functional>

namespace samon {

PlanLibrary::PlanLibrary(PlanId root, std::vector<PlanNode> nodes, std::set<RoleId> roles)
    : root_(std::move(root)), roles_(std::move(roles)) {
    for (auto& n : nodes) {
        auto id = n.id;
        nodes_.emplace(std::move(id), std::move(n));
    }
    // Depth/parent indices via BFS from the root. Nodes that are unreachable,
    // duplicated as children, or cyclic simply get no depth entry; validation
    // reports them.
    std::vector<PlanId> frontier;
    if (nodes_.count(root_)) {
        depth_[root_] = 1;
        frontier.push_back(root_);
    }
    while (!frontier.empty()) {
        std::vector<PlanId> next;
        for (const auto& id : frontier) {
            int d = depth_.at(id);
            max_depth_ = std::max(max_depth_, d);
            for (const auto& c : nodes_.at(id).children) {
                if (!nodes_.count(c) || depth_.count(c)) continue;
                depth_[c] = d + 1;
                parent_[c] = id;
                next.push_back(c);
            }
        }
        frontier = std::move(next);
    }
}

const PlanNode& PlanLibrary::node(const PlanId& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw ConfigError("unknown plan id: " + id);
    return it->second;
}

int PlanLibrary::depth(const PlanId& id) const {
    auto it = depth_.find(id);
    if (it == depth_.end()) throw ConfigError("plan not reachable from root: " + id);
    return it->second;
}

std::optional<PlanId> PlanLibrary::parent(const PlanId& id) const {
    auto it = parent_.find(id);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
}

std::vector<PlanId> PlanLibrary::plans_at_depth(int depth) const {
    std::vector<PlanId> out;
    for (const auto& [id, d] : depth_)
        if (d == depth) out.push_back(id);
    return out;
}

std::vector<PlanId> PlanLibrary::all_ids() const {
    std::vector<PlanId> out;
    out.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) out.push_back(id);
    return out;
}

std::vector<std::vector<PlanId>> PlanLibrary::all_paths() const {
    std::vector<std::vector<PlanId>> out;
    if (!nodes_.count(root_)) return out;
    std::vector<PlanId> path;
    std::function<void(const PlanId&)> walk = [&](const PlanId& id) {
        path.push_back(id);
        const auto& ch = nodes_.at(id).children;
        bool any = false;
        for (const auto& c : ch) {
            if (depth_.count(c) && parent_.at(c) == id) {
                any = true;
                walk(c);
            }
        }
        if (!any) out.push_back(path);
        path.pop_back();
    };
    walk(root_);
    return out;
}

bool PlanLibrary::valid_path(const std::vector<PlanId>& path) const {
    if (path.empty() || path.front() != root_) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!nodes_.count(path[i])) return false;
        const auto& ch = nodes_.at(path[i]).children;
        if (std::find(ch.begin(), ch.end(), path[i + 1]) == ch.end()) return false;
    }
    return nodes_.count(path.back()) > 0;
}

const RoleId& TeamDefinition::role_of(const AgentId& agent) const {
    for (const auto& m : members)
        if (m.agent == agent) return m.role;
    throw ConfigError("agent not in team: " + agent);
}

std::set<RoleId> TeamDefinition::role_set() const {
    std::set<RoleId> out;
    for (const auto& m : members) out.insert(m.role);
    return out;
}

std::vector<Violation> validate_nodes(const PlanId& root, const std::vector<PlanNode>& nodes) {
    std::vector<Violation> out;
    std::map<PlanId, const PlanNode*> by_id;
    for (const auto& n : nodes) {
        if (n.id.empty()) out.push_back({n.id, "empty-id", "plan node with empty id"});
        if (!by_id.emplace(n.id, &n).second)
            out.push_back({n.id, "duplicate-id", "two nodes share id '" + n.id + "'"});
    }
    if (!by_id.count(root)) {
        out.push_back({root, "missing-root", "root id not among nodes"});
        return out;
    }

    // Parent uniqueness and dangling children.
    std::map<PlanId, int> parents;
    for (const auto& n : nodes) {
        for (const auto& c : n.children) {
            if (!by_id.count(c)) {
                out.push_back({n.id, "dangling-child", "child '" + c + "' is not a node"});
                continue;
            }
            parents[c]++;
        }
    }
    for (const auto& [id, cnt] : parents) {
        if (cnt > 1) out.push_back({id, "multiple-parents", "node has " + std::to_string(cnt) + " parents"});
        if (id == root) out.push_back({id, "root-has-parent", "root appears as a child"});
    }

    // Reachability (covers acyclicity together with parent uniqueness).
    std::set<PlanId> seen{root};
    std::vector<PlanId> stack{root};
    while (!stack.empty()) {
        PlanId id = stack.back();
        stack.pop_back();
        for (const auto& c : by_id.at(id)->children) {
            if (by_id.count(c) && seen.insert(c).second) stack.push_back(c);
        }
    }
    for (const auto& n : nodes)
        if (!seen.count(n.id))
            out.push_back({n.id, "unreachable", "node not reachable from root"});

    // Team-plan prefix: an individual plan may not have a team-plan child.
    for (const auto& n : nodes) {
        if (n.team) continue;
        for (const auto& c : n.children) {
            auto it = by_id.find(c);
            if (it != by_id.end() && it->second->team)
                out.push_back({n.id, "team-prefix",
                               "individual plan has team-plan child '" + c + "'"});
        }
    }

    // Non-empty literals and signatures.
    for (const auto& n : nodes) {
        for (const auto& l : n.preconditions)
            if (l.name.empty()) out.push_back({n.id, "empty-literal", "empty precondition name"});
        for (const auto& l : n.terminations)
            if (l.name.empty()) out.push_back({n.id, "empty-literal", "empty termination name"});
        for (const auto& [role, sig] : n.signatures)
            if (sig.empty())
                out.push_back({n.id, "empty-signature", "empty signature for role '" + role + "'"});
    }
    return out;
}

std::vector<Violation> validate_library(const PlanLibrary& lib) {
    std::vector<PlanNode> nodes;
    for (const auto& id : lib.all_ids()) nodes.push_back(lib.node(id));
    return validate_nodes(lib.root(), nodes);
}

bool is_simple_team(const PlanLibrary& lib, const TeamDefinition& team) {
    auto roles = team.role_set();
    for (const auto& r : roles)
        if (!lib.roles().count(r)) throw ConfigError("team references unknown role: " + r);
    // Simple iff every team plan is executed by the whole team, i.e. carries
    // a signature for every team role.
    for (const auto& id : lib.all_ids()) {
        const auto& n = lib.node(id);
        if (!n.team) continue;
        for (const auto& r : roles)
            if (!n.signatures.count(r)) return false;
    }
    return true;
}

std::set<PlanId> matching_plans(const PlanLibrary& lib, const RoleId& role, const Signature& sig,
                                int depth) {
    std::set<PlanId> out;
    for (const auto& id : lib.plans_at_depth(depth)) {
        const auto& n = lib.node(id);
        auto it = n.signatures.find(role);
        if (it != n.signatures.end() && it->second == sig) out.insert(id);
    }
    return out;
}

std::map<PlanPair, std::set<RoleId>> key_agents(const PlanLibrary& lib, const TeamDefinition& team,
                                                const std::vector<PlanId>& plans) {
    std::map<PlanPair, std::set<RoleId>> out;
    auto roles = team.role_set();
    for (std::size_t i = 0; i < plans.size(); ++i) {
        for (std::size_t j = i + 1; j < plans.size(); ++j) {
            PlanPair pair = std::minmax(plans[i], plans[j]);
            const auto& a = lib.node(plans[i]);
            const auto& b = lib.node(plans[j]);
            std::set<RoleId> keys;
            for (const auto& r : roles) {
                auto ia = a.signatures.find(r);
                auto ib = b.signatures.find(r);
                // A role differentiates the pair only if it executes both
                // plans and with different observable behavior.
                if (ia != a.signatures.end() && ib != b.signatures.end() &&
                    ia->second != ib->second)
                    keys.insert(r);
            }
            out[pair] = std::move(keys);
        }
    }
    return out;
}

PartitionReport is_observably_partitioned(const PlanLibrary& lib, const TeamDefinition& team,
                                          const std::vector<PlanId>& plans) {
    PartitionReport rep;
    rep.partitioned = true;
    for (const auto& [pair, keys] : key_agents(lib, team, plans)) {
        if (keys.empty()) rep.partitioned = false;
        rep.key_roles.insert(keys.begin(), keys.end());
    }
    return rep;
}

std::vector<PlanPair> risky_points(const PlanLibrary& lib, const TeamDefinition& team,
                                   const std::vector<PlanId>& plans) {
    std::vector<PlanPair> out;
    for (const auto& [pair, keys] : key_agents(lib, team, plans))
        if (keys.empty()) out.push_back(pair);
    return out;
}

}  // namespace samon
