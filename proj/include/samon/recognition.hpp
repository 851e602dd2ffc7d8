#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "samon/plan_model.hpp"
#include "samon/types.hpp"

namespace samon {

struct Observation {
    AgentId agent;
    std::int64_t tick = 0;
    Signature features;
};

struct OutOfOrderTick : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-agent recognition state over the expanded plan hierarchy.
///
/// A node own-matches when its expectation for the modeled role is contained
/// in the latest observation. A node is matching when it own-matches or has a
/// matching child; matching is memoryless across ticks except for the
/// selection tick, which records when a node most recently turned matching.
class AgentModel {
  public:
    AgentModel(const PlanLibrary& lib, RoleId role);

    const RoleId& role() const { return role_; }
    std::size_t node_count() const { return state_.size(); }
    std::int64_t last_tick() const { return last_tick_; }

    /// Re-match against one observation. Ticks must be strictly increasing.
    void update(const Observation& obs);

    bool matching(const PlanId& id) const { return state_.at(id).matching; }

    /// Selection-tick rule: a plan counts as just-started iff it most
    /// recently turned matching at `tick`.
    bool just_started(const PlanId& id, std::int64_t tick) const {
        const auto& s = state_.at(id);
        return s.matching && s.selected_tick == tick;
    }

    /// Root-to-leaf paths whose every node is matching.
    std::vector<std::vector<PlanId>> matching_paths() const;

    /// Plan ids at `depth` lying on at least one matching path.
    std::set<PlanId> plans_at_depth(int depth) const;

    /// Optional caller-supplied pruning of path hypotheses. Default keeps all.
    using PathFilter = bool (*)(const std::vector<PlanId>&);

  private:
    struct NodeState {
        bool own_match = false;
        bool matching = false;
        std::int64_t selected_tick = -1;
    };

    const PlanLibrary* lib_;
    RoleId role_;
    std::map<PlanId, NodeState> state_;
    std::int64_t last_tick_ = -1;

    bool propagate(const PlanId& id, std::int64_t tick);
};

}  // namespace samon
