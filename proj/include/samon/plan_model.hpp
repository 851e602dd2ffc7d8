#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "samon/types.hpp"

namespace samon {

/// One reactive plan in the decomposition hierarchy.
struct PlanNode {
    PlanId id;
    bool team = false;                       // boxed plans: joint team activity
    std::vector<PlanId> children;            // ordered
    std::vector<Literal> preconditions;      // selection conditions
    std::vector<Literal> terminations;       // termination conditions
    std::map<RoleId, Signature> signatures;  // expected observable behavior per role
};

/// The single decomposition hierarchy plus the roles it mentions.
/// Immutable after construction; derived indices (parent, depth) are built once.
class PlanLibrary {
  public:
    PlanLibrary() = default;
    PlanLibrary(PlanId root, std::vector<PlanNode> nodes, std::set<RoleId> roles);

    const PlanId& root() const { return root_; }
    const std::set<RoleId>& roles() const { return roles_; }

    bool has(const PlanId& id) const { return nodes_.count(id) > 0; }
    const PlanNode& node(const PlanId& id) const;

    /// Depth of a node, root = 1. Throws ConfigError on unknown id.
    int depth(const PlanId& id) const;
    int max_depth() const { return max_depth_; }

    std::optional<PlanId> parent(const PlanId& id) const;

    /// All plan ids at a given depth, in id order.
    std::vector<PlanId> plans_at_depth(int depth) const;

    /// All ids, in id order.
    std::vector<PlanId> all_ids() const;

    /// Root-to-leaf paths, each a vector of ids.
    std::vector<std::vector<PlanId>> all_paths() const;

    /// True if `path` is a root-to-node chain of parent->child edges.
    bool valid_path(const std::vector<PlanId>& path) const;

  private:
    PlanId root_;
    std::map<PlanId, PlanNode> nodes_;
    std::set<RoleId> roles_;
    std::map<PlanId, PlanId> parent_;
    std::map<PlanId, int> depth_;
    int max_depth_ = 0;

    friend struct LibraryBuilder;
};

struct TeamMember {
    AgentId agent;
    RoleId role;
};

struct TeamDefinition {
    std::vector<TeamMember> members;

    const RoleId& role_of(const AgentId& agent) const;
    std::set<RoleId> role_set() const;
};

/// One broken rule, named after the offending node.
struct Violation {
    PlanId node;
    std::string rule;
    std::string detail;
};

/// Checks every PlanLibrary/PlanNode invariant. Empty report means valid.
/// Violations are data, not errors.
std::vector<Violation> validate_library(const PlanLibrary& lib);

/// Like validate_library, but also checks the raw node list before the
/// library indices exist (duplicate ids, dangling children, cycles).
std::vector<Violation> validate_nodes(const PlanId& root, const std::vector<PlanNode>& nodes);

/// Def. 2: no different team plans executed by different sub-teams. We read
/// a plan's executing sub-team off its signature keys: the library is simple
/// for `team` iff every team plan carries a signature for every team role.
bool is_simple_team(const PlanLibrary& lib, const TeamDefinition& team);

/// Static M(A,B/P) at one depth: plans at `depth` whose signature for `role`
/// equals `sig` (set equality). Plans lacking the role are excluded.
std::set<PlanId> matching_plans(const PlanLibrary& lib, const RoleId& role, const Signature& sig,
                                int depth);

using PlanPair = std::pair<PlanId, PlanId>;  // normalized: first < second

/// Def. 5: roles whose signatures differ between the two plans of each pair,
/// i.e. whose recognition ambiguity sets restricted to the pair are disjoint.
std::map<PlanPair, std::set<RoleId>> key_agents(const PlanLibrary& lib, const TeamDefinition& team,
                                                const std::vector<PlanId>& plans);

struct PartitionReport {
    bool partitioned = false;
    std::set<RoleId> key_roles;  // union over all pairs
};

/// Def. 6: every distinct pair has at least one key agent.
PartitionReport is_observably_partitioned(const PlanLibrary& lib, const TeamDefinition& team,
                                          const std::vector<PlanId>& plans);

/// Pairs with no key agent: disagreements there are undetectable under
/// max-coherence.
std::vector<PlanPair> risky_points(const PlanLibrary& lib, const TeamDefinition& team,
                                   const std::vector<PlanId>& plans);

}  // namespace samon
