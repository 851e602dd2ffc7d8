#include "samon/diagnosis.hpp"

namespace samon {

namespace {

void add_belief(BeliefSet& bs, const Literal& lit, Provenance prov) {
    auto [it, inserted] = bs.literals.emplace(lit.name, std::make_pair(lit.positive, prov));
    if (!inserted && it->second.first != lit.positive)
        throw AscriptionError("contradictory ascription for '" + lit.name + "' within agent " +
                              bs.agent);
}

}  // namespace

BeliefSet ascribe_beliefs(const PlanLibrary& lib, const AgentId& agent,
                          const std::vector<PlanId>& path,
                          const std::set<PlanId>& just_started) {
    if (!lib.valid_path(path)) throw ConfigError("hypothesis path not valid in library");

    BeliefSet bs;
    bs.agent = agent;
    for (const auto& id : path) {
        const auto& n = lib.node(id);
        // Unterminated plan: its termination conditions are believed false.
        for (const auto& t : n.terminations) add_belief(bs, t.negated(), Provenance::NegatedTermination);
        if (just_started.count(id))
            for (const auto& p : n.preconditions)
                add_belief(bs, p, Provenance::AssertedPrecondition);
    }
    return bs;
}

Diagnosis check_consistency(const std::vector<BeliefSet>& sets) {
    Diagnosis d;
    // name -> (agents believing true, agents believing false)
    std::map<std::string, std::pair<std::set<AgentId>, std::set<AgentId>>> by_name;
    for (const auto& bs : sets)
        for (const auto& [name, pol] : bs.literals)
            (pol.first ? by_name[name].first : by_name[name].second).insert(bs.agent);

    for (const auto& [name, sides] : by_name) {
        if (sides.first.empty() || sides.second.empty()) continue;
        auto& agents = d.contradictions[name];
        agents.insert(sides.first.begin(), sides.first.end());
        agents.insert(sides.second.begin(), sides.second.end());
    }
    d.verified = !d.contradictions.empty();
    return d;
}

Diagnosis diagnose_failure(const PlanLibrary& lib,
                           const std::vector<AgentPathHypothesis>& hypotheses) {
    std::vector<BeliefSet> sets;
    sets.reserve(hypotheses.size());
    for (const auto& h : hypotheses)
        sets.push_back(ascribe_beliefs(lib, h.agent, h.path, h.just_started));
    return check_consistency(sets);
}

}  // namespace samon
