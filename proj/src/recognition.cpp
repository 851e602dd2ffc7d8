#include "samon/recognition.hpp"

#include <algorithm>

namespace samon {

AgentModel::AgentModel(const PlanLibrary& lib, RoleId role)
    : lib_(&lib), role_(std::move(role)) {
    for (const auto& id : lib.all_ids()) state_[id];  // all non-matching
}

bool AgentModel::propagate(const PlanId& id, std::int64_t tick) {
    bool child_match = false;
    for (const auto& c : lib_->node(id).children)
        child_match = propagate(c, tick) || child_match;

    auto& s = state_[id];
    bool was = s.matching;
    s.matching = s.own_match || child_match;  // own match dominates failing children
    if (s.matching && !was) s.selected_tick = tick;
    return s.matching;
}

void AgentModel::update(const Observation& obs) {
    if (obs.tick <= last_tick_)
        throw OutOfOrderTick("observation tick " + std::to_string(obs.tick) +
                             " not after " + std::to_string(last_tick_));
    last_tick_ = obs.tick;

    // Compare observations to expectations: a node with an expectation for
    // this role matches when the expectation is contained in what was seen.
    for (auto& [id, s] : state_) {
        const auto& sigs = lib_->node(id).signatures;
        auto it = sigs.find(role_);
        s.own_match = it != sigs.end() &&
                      std::includes(obs.features.begin(), obs.features.end(),
                                    it->second.begin(), it->second.end());
    }
    propagate(lib_->root(), obs.tick);
}

std::vector<std::vector<PlanId>> AgentModel::matching_paths() const {
    std::vector<std::vector<PlanId>> out;
    for (const auto& path : lib_->all_paths()) {
        bool all = true;
        for (const auto& id : path)
            if (!state_.at(id).matching) { all = false; break; }
        if (all) out.push_back(path);
    }
    return out;
}

std::set<PlanId> AgentModel::plans_at_depth(int depth) const {
    std::set<PlanId> out;
    for (const auto& path : matching_paths())
        if (static_cast<int>(path.size()) >= depth) out.insert(path[depth - 1]);
    return out;
}

}  // namespace samon
