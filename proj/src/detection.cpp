#include "samon/detection.hpp"

#include <algorithm>
#include <cassert>

namespace samon {

namespace {

enum class KindMix { AllTeam, AllIndividual, Mixed };

KindMix kind_mix(const PlanLibrary& lib, const TeamHypothesis& h) {
    bool team = false, indiv = false;
    for (const auto& [a, p] : h.assignment)
        (lib.node(p).team ? team : indiv) = true;
    if (team && indiv) return KindMix::Mixed;
    return team ? KindMix::AllTeam : KindMix::AllIndividual;
}

bool all_equal(const TeamHypothesis& h) {
    return h.distinct_plans() == 1;
}

}  // namespace

DetectionVerdict detect_teamwork(const PlanLibrary& lib, const TeamDefinition& team,
                                 const CandidateLadder& ladder, Policy policy,
                                 const TieBreak& tie) {
    if (!is_simple_team(lib, team))
        throw UnsupportedConfiguration("detection requires a simple team (Def. 2)");

    const Extreme extreme =
        policy == Policy::Optimistic ? Extreme::MaxCoherent : Extreme::MaxIncoherent;

    DetectionVerdict v;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const int depth = static_cast<int>(i) + 1;
        const auto& cands = ladder[i];

        // Depth exhaustion: some hierarchies ended while others continue.
        bool any_empty = false, all_empty = true;
        for (const auto& a : cands.agents) {
            bool empty = true;
            if (cands.self && cands.self->first == a) {
                empty = false;
            } else {
                auto it = cands.sets.find(a);
                empty = it == cands.sets.end() || it->second.empty();
            }
            any_empty = any_empty || empty;
            all_empty = all_empty && empty;
        }
        if (all_empty) break;
        if (any_empty) {
            if (depth == 1)
                throw ModelingIncompleteError("agent without candidates at the root depth");
            v.outcome = Outcome::Failure;
            v.difference_depth = depth;
            return v;
        }

        TieBreak depth_tie = tie;
        if (tie.seed) depth_tie.seed = mix_seed(*tie.seed, static_cast<std::uint64_t>(depth));
        TeamHypothesis h = select_extreme(cands, extreme, depth_tie);
        v.trail.push_back(h);

        switch (kind_mix(lib, h)) {
            case KindMix::AllIndividual:
                return v;  // comparison stops at individual plans
            case KindMix::Mixed:
                v.outcome = Outcome::Failure;
                v.difference_depth = depth;
                v.differing = h;
                return v;
            case KindMix::AllTeam:
                if (!all_equal(h)) {
                    v.outcome = Outcome::Failure;
                    v.difference_depth = depth;
                    v.differing = h;
                    return v;
                }
                break;
        }
    }
    return v;
}

DetectionVerdict detect_centralized(const PlanLibrary& lib, const TeamDefinition& team,
                                    const CandidateLadder& ladder, const TieBreak& tie) {
    DetectionVerdict opt = detect_teamwork(lib, team, ladder, Policy::Optimistic, tie);
    DetectionVerdict pess = detect_teamwork(lib, team, ladder, Policy::Pessimistic, tie);

    // A coherent failure implies an incoherent one.
    assert(!(opt.outcome == Outcome::Failure && pess.outcome == Outcome::NoFailure));

    if (opt.outcome == pess.outcome) return opt;

    DetectionVerdict v;
    v.outcome = Outcome::PossibleFailure;
    v.difference_depth = pess.difference_depth;
    v.trail = opt.trail;
    if (!opt.trail.empty()) v.optimistic_view = opt.trail.back();
    v.pessimistic_view = pess.differing;
    return v;
}

DistributedResult detect_distributed(const PlanLibrary& lib, const TeamDefinition& team,
                                     const std::map<AgentId, CandidateLadder>& per_monitor,
                                     const std::vector<PlanId>& plans, const TieBreak& tie) {
    DistributedResult r;
    for (const auto& [monitor, ladder] : per_monitor) {
        auto v = detect_teamwork(lib, team, ladder, Policy::Optimistic, tie);
        if (v.outcome == Outcome::Failure) r.team = Outcome::Failure;
        r.per_monitor.emplace(monitor, std::move(v));
    }
    auto rep = is_observably_partitioned(lib, team, plans);
    if (!rep.partitioned) {
        r.guarantee_void = true;
        r.risky = risky_points(lib, team, plans);
    }
    return r;
}

DetectionVerdict detect_mutex(const CandidateSets& group, int depth, Policy policy,
                              const TieBreak& tie) {
    // Inverted mapping: sound <=> max incoherence, complete <=> max coherence.
    const Extreme extreme =
        policy == Policy::Optimistic ? Extreme::MaxIncoherent : Extreme::MaxCoherent;
    TeamHypothesis h = select_extreme(group, extreme, tie);

    DetectionVerdict v;
    v.trail.push_back(h);
    if (h.distinct_plans() < h.assignment.size()) {  // some equality exists
        v.outcome = Outcome::Failure;
        v.difference_depth = depth;
        v.differing = h;
    }
    return v;
}

DetectionVerdict detect_role_similarity(const PlanLibrary& lib, const TeamDefinition& team,
                                        const AgentId& agent_a, const AgentId& agent_b,
                                        const std::vector<PlanId>& cands_a,
                                        const std::vector<PlanId>& cands_b,
                                        const SimilarityRelation& similar) {
    if (team.role_of(agent_a) != team.role_of(agent_b))
        throw UnsupportedConfiguration("role-similarity applies to agents of one role");
    for (const auto& p : cands_a)
        if (lib.node(p).team)
            throw UnsupportedConfiguration("role-similarity compares individual plans");
    for (const auto& p : cands_b)
        if (lib.node(p).team)
            throw UnsupportedConfiguration("role-similarity compares individual plans");

    DetectionVerdict v;
    for (const auto& pa : cands_a)
        for (const auto& pb : cands_b)
            if (similar(pa, pb)) return v;  // some similar pair: benefit of the doubt

    v.outcome = Outcome::Failure;
    if (!cands_a.empty()) v.difference_depth = lib.depth(cands_a.front());
    return v;
}

DetectionClass classify(const DetectionVerdict& verdict, bool ground_truth_failure) {
    if (verdict.outcome == Outcome::PossibleFailure)
        throw std::invalid_argument("POSSIBLE_FAILURE needs verification, not classification");
    bool detected = verdict.outcome == Outcome::Failure;
    if (detected) return ground_truth_failure ? DetectionClass::TruePositive
                                              : DetectionClass::FalsePositive;
    return ground_truth_failure ? DetectionClass::FalseNegative : DetectionClass::TrueNegative;
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::NoFailure: return "NO_FAILURE";
        case Outcome::PossibleFailure: return "POSSIBLE_FAILURE";
        case Outcome::Failure: return "FAILURE";
    }
    return "?";
}

const char* to_string(DetectionClass c) {
    switch (c) {
        case DetectionClass::TruePositive: return "TP";
        case DetectionClass::TrueNegative: return "TN";
        case DetectionClass::FalsePositive: return "FP";
        case DetectionClass::FalseNegative: return "FN";
    }
    return "?";
}

}  // namespace samon
