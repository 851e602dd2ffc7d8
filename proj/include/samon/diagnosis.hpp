#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "samon/plan_model.hpp"

namespace samon {

enum class Provenance { NegatedTermination, AssertedPrecondition };

struct AscriptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Beliefs inferred for one agent from its hypothesized plan path: an agent
/// is internally consistent by construction.
struct BeliefSet {
    AgentId agent;
    // proposition name -> (believed polarity, where the belief came from)
    std::map<std::string, std::pair<bool, Provenance>> literals;

    bool holds(const std::string& name, bool positive) const {
        auto it = literals.find(name);
        return it != literals.end() && it->second.first == positive;
    }
};

struct Diagnosis {
    // proposition name -> agents holding it with either polarity
    std::map<std::string, std::set<AgentId>> contradictions;
    bool verified = false;  // at least one contradiction found
};

/// Belief ascription: every plan on the path contributes the negations of its
/// termination conditions; plans in `just_started` additionally assert their
/// preconditions (the plan was just selected, so they likely hold).
BeliefSet ascribe_beliefs(const PlanLibrary& lib, const AgentId& agent,
                          const std::vector<PlanId>& path,
                          const std::set<PlanId>& just_started);

/// Propositions appearing with both polarities across the union of the sets.
Diagnosis check_consistency(const std::vector<BeliefSet>& sets);

struct AgentPathHypothesis {
    AgentId agent;
    std::vector<PlanId> path;
    std::set<PlanId> just_started;
};

/// Ascribes beliefs per agent, then checks the union for contradictions.
/// `verified` stays false when the chosen hypotheses explain nothing.
Diagnosis diagnose_failure(const PlanLibrary& lib,
                           const std::vector<AgentPathHypothesis>& hypotheses);

}  // namespace samon
